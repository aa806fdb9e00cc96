"""Command line front end.  Every command prints one JSON document on stdout.

Exit codes: 0 success, 2 a curvature identity or verification failed,
3 bad input, 4 a search or degeneracy failure.
"""

import argparse
import json
import sys

from . import jsonio
from .classify import (
    ip_class,
    is_admissible_phi,
    is_ip_by_sampling,
    is_self_adjoint,
)
from .curvature import (
    BilinearSkewMap,
    CurvatureTensor4,
    jordan_type,
    make_R_phi,
    make_T_phi,
    plane_operator,
    skew_map_to_tensor,
    tensor_to_skew_map,
    validate_symmetries,
)
from .errors import InputError, Rank2Error
from .exactlin import LinearMap, SignatureSpace, qarray
from .fixtures import Fixture, fixture  # noqa: F401  (re-exported)
from .realize import verify_realization
from .reconstruct import decompose
from .sampling import random_admissible_phi, random_spacelike_plane  # noqa: F401

EXIT_OK = 0
EXIT_VALIDATION = 2


def _need_json(args):
    if not args.json:
        raise InputError(f"{args.command} needs --json <path>")
    return jsonio.load(args.json)


def _as_tensor(obj):
    if isinstance(obj, CurvatureTensor4):
        return obj
    if isinstance(obj, LinearMap):
        return make_R_phi(obj)
    if isinstance(obj, BilinearSkewMap):
        return skew_map_to_tensor(obj)
    raise InputError("expected a curvature tensor or a self-adjoint map")


def _as_curvature_like(obj):
    """Tensors and skew maps are used as given; a map phi becomes R_phi."""
    if isinstance(obj, LinearMap):
        return make_R_phi(obj)
    return obj


def _space_of(R):
    return R.space if isinstance(R, CurvatureTensor4) else R.domain


def _parse_plane(text):
    try:
        v1, v2 = (qarray([s for s in part.split(",")]) for part in text.split(";"))
    except ValueError as exc:
        raise InputError("--plane takes 'a,b,...;c,d,...'") from exc
    return v1, v2


def _plane(args, R):
    if args.plane:
        return _parse_plane(args.plane[0])
    return random_spacelike_plane(_space_of(R), args.seed, args.bound, key="cli-plane")


def cmd_validate(args):
    rep = validate_symmetries(_as_tensor(_need_json(args)))
    out = {"antisymmetry": rep.b_ok, "pair_symmetry": rep.c_ok,
           "bianchi": rep.d_ok, "ok": rep.all_ok}
    return out, EXIT_OK if rep.all_ok else EXIT_VALIDATION


def cmd_plane_op(args):
    R = _as_curvature_like(_need_json(args))
    planes = [_parse_plane(p) for p in args.plane] if args.plane else [_plane(args, R)]
    results = []
    for v1, v2 in planes:
        po = plane_operator(R, v1, v2, allow_nonspacelike=args.timelike)
        entry = {"plane": [jsonio.vec(v1), jsonio.vec(v2)], "rank": po.rank}
        if not args.timelike:
            entry["gramdet"] = jsonio.rat(po.gramdet)
            entry["op"] = jsonio.mat(po.op)
        results.append(entry)
    return {"planes": results}, EXIT_OK


def _jordan_json(jt):
    out = {"type": jt.tag.value}
    if jt.lambda_sq is not None:
        out["lambda_sq"] = jsonio.rat(jt.lambda_sq)
    return out


def cmd_jordan(args):
    R = _as_curvature_like(_need_json(args))
    v1, v2 = _plane(args, R)
    jt = jordan_type(plane_operator(R, v1, v2))
    return {"plane": [jsonio.vec(v1), jsonio.vec(v2)], "jordan": _jordan_json(jt)}, EXIT_OK


def cmd_classify(args):
    phi = _need_json(args)
    if not isinstance(phi, LinearMap):
        raise InputError("classify takes a LinearMap")
    out = {"self_adjoint": is_self_adjoint(phi), "admissible": is_admissible_phi(phi)}
    if out["self_adjoint"] and out["admissible"]:
        v = ip_class(phi)
        out["ip"] = {"tag": v.tag.value, "within_hypotheses": v.within_hypotheses}
        if v.C is not None:
            out["ip"]["C"] = jsonio.rat(v.C)
    return out, EXIT_OK


def cmd_ip_check(args):
    R = _as_tensor(_need_json(args))
    forced = [_parse_plane(p) for p in args.plane]
    v = is_ip_by_sampling(R, args.samples, args.seed, args.bound, forced)
    out = {"constant": v.constant, "samples": v.samples}
    if v.constant:
        out["jordan"] = _jordan_json(v.jordan)
    else:
        out["witness"] = [{"plane": [jsonio.vec(a), jsonio.vec(b)], "jordan": _jordan_json(jt)}
                          for (a, b), jt in v.witness]
    return out, EXIT_OK


def cmd_decompose(args):
    obj = _need_json(args)
    if isinstance(obj, CurvatureTensor4):
        obj = tensor_to_skew_map(obj)
    elif isinstance(obj, LinearMap):
        obj = make_T_phi(obj)
    return jsonio.decomposition_to_json(decompose(obj, seed=args.seed)), EXIT_OK


def cmd_realize(args):
    rep = verify_realization(_as_tensor(_need_json(args)), seed=args.seed,
                             points=args.points, planes=args.samples)
    samples = []
    for s in rep.rank_samples:
        ranks = s["ranks"]
        rank = ranks[0] if ranks and len(ranks) == 1 else ranks
        samples.append({"point": jsonio.vec(s["point"]), "rank": rank,
                        "degenerate": s["degenerate"]})
    out = {
        "epsilon": rep.epsilon,
        "phi": jsonio.linear_map_to_json(rep.phi),
        "normal_weight": jsonio.rat(rep.epsilon * rep.scale),
        "origin_check": "exact-equal" if rep.origin_exact else "mismatch",
        "christoffel_check": "exact-equal" if rep.christoffel_exact else "mismatch",
        "rank_samples": samples,
        "ok": rep.ok,
    }
    return out, EXIT_OK if rep.ok else EXIT_VALIDATION


def cmd_fixture(args):
    f = fixture(args.name, args.p, args.q)
    return {"fixture": f.name, "params": f.params, "payload": jsonio.to_json(f.payload)}, EXIT_OK


def cmd_gen_phi(args):
    phi = random_admissible_phi(args.p, args.q, args.kernel_dim, args.seed, args.bound)
    return jsonio.linear_map_to_json(phi), EXIT_OK


def cmd_gen_plane(args):
    space = SignatureSpace.standard(args.p, args.q)
    v1, v2 = random_spacelike_plane(space, args.seed, args.bound)
    return {"space": jsonio.space_to_json(space), "plane": [jsonio.vec(v1), jsonio.vec(v2)]}, EXIT_OK


COMMANDS = {
    "validate": (cmd_validate, "check the curvature tensor identities"),
    "plane-op": (cmd_plane_op, "plane operator R(v1, v2) and its rank"),
    "jordan": (cmd_jordan, "Jordan type of R on a spacelike plane"),
    "classify": (cmd_classify, "self-adjointness, admissibility and IP class of phi"),
    "ip-check": (cmd_ip_check, "sample Jordan types over spacelike planes"),
    "decompose": (cmd_decompose, "write T as T_{chi,xi} or eps mu T_phi"),
    "realize": (cmd_realize, "realize R by a graph hypersurface and check it"),
    "fixture": (cmd_fixture, "emit one of the worked counterexamples"),
    "gen-phi": (cmd_gen_phi, "random admissible self-adjoint phi"),
    "gen-plane": (cmd_gen_plane, "random spacelike plane"),
}


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors (exit 3), keeping 2 for failed identities."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(InputError.exit_code, f"{self.prog}: error: {message}\n")


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=200)
    common.add_argument("--bound", type=int, default=3)
    common.add_argument("--json", metavar="PATH")
    common.add_argument("--timelike", action="store_true",
                        help="accept non-spacelike planes (rank only)")
    common.add_argument("--plane", action="append", default=[], metavar="V1;V2",
                        help="comma separated coordinates; repeatable")

    parser = _Parser(prog="rank2curv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    subs = {name: sub.add_parser(name, parents=[common], help=text)
            for name, (_, text) in COMMANDS.items()}
    subs["realize"].add_argument("--points", type=int, default=10)
    subs["fixture"].add_argument("name", choices=["8.1", "8.2", "8.3"])
    for name in ("fixture", "gen-phi", "gen-plane"):
        subs[name].add_argument("--p", type=int, default=None if name == "fixture" else 0)
        subs[name].add_argument("--q", type=int, default=None if name == "fixture" else 5)
    subs["gen-phi"].add_argument("--kernel-dim", type=int, default=0)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        payload, code = handler(args)
    except Rank2Error as exc:
        err = {"error": type(exc).__name__, "message": str(exc), "schema_version": 1}
        sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
        return exc.exit_code
    sys.stdout.write(jsonio.dumps(payload))
    return code


if __name__ == "__main__":
    sys.exit(main())
