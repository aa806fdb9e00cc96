"""JSON interchange.  Rationals travel as "n/d" strings; indices are 0-based.

Every top-level document carries ``schema_version``.  Output is emitted with
sorted keys so that equal payloads serialize to identical bytes.
"""

import json

import numpy as np

from .curvature import BilinearSkewMap, CurvatureTensor4
from .errors import InputError
from .exactlin import LinearMap, Q, SignatureSpace, qarray, zeros
from .reconstruct import ChiXi, PhiForm

SCHEMA_VERSION = 1


def rat(x):
    x = Q(x)
    return f"{x.numerator}/{x.denominator}"


def vec(v):
    return [rat(x) for x in v]


def mat(m):
    return [vec(row) for row in m]


def parse_vec(data):
    try:
        return qarray(data)
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad vector {data!r}") from exc


def space_to_json(space):
    out = {"p": space.p, "q": space.q}
    if not space.is_standard:
        out["gram"] = mat(space.gram)
    return out


def space_from_json(data):
    try:
        p, q = int(data["p"]), int(data["q"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("a space needs integer fields p and q") from exc
    if "gram" in data:
        return SignatureSpace(p, q, parse_vec(data["gram"]))
    return SignatureSpace.standard(p, q)


def tensor_to_json(R):
    c = R.components
    entries = [[*map(int, idx), rat(c[idx])] for idx in np.ndindex(c.shape) if c[idx] != 0]
    return {"type": "CurvatureTensor4", "space": space_to_json(R.space), "entries": entries}


def tensor_from_json(data):
    space = space_from_json(data["space"])
    n = space.dim
    c = zeros(n, n, n, n)
    for e in data.get("entries", []):
        if len(e) != 5:
            raise InputError(f"tensor entry {e!r} is not [i, j, k, l, value]")
        idx = tuple(int(i) for i in e[:4])
        if not all(0 <= i < n for i in idx):
            raise InputError(f"tensor index {idx} out of range")
        c[idx] = Q(e[4])
    return CurvatureTensor4(space, c)


def skew_map_to_json(T):
    m = T.domain.dim
    blocks = {f"{i},{j}": mat(T.blocks[i, j])
              for i in range(m) for j in range(i + 1, m)
              if any(x != 0 for x in T.blocks[i, j].ravel())}
    return {"type": "BilinearSkewMap", "domain": space_to_json(T.domain),
            "codomain": space_to_json(T.codomain), "blocks": blocks}


def skew_map_from_json(data):
    A = space_from_json(data["domain"])
    B = space_from_json(data.get("codomain", data["domain"]))
    m, n = A.dim, B.dim
    b = zeros(m, m, n, n)
    for key, block in data.get("blocks", {}).items():
        try:
            i, j = (int(s) for s in key.split(","))
        except ValueError as exc:
            raise InputError(f"block key {key!r} is not 'i,j'") from exc
        if not (0 <= i < j < m):
            raise InputError(f"block key {key!r} must satisfy 0 <= i < j < {m}")
        blk = parse_vec(block)
        b[i, j] = blk
        b[j, i] = -blk
    return BilinearSkewMap(A, B, b)


def linear_map_to_json(phi):
    return {"type": "LinearMap", "domain": space_to_json(phi.domain),
            "codomain": space_to_json(phi.codomain), "matrix": mat(phi.matrix)}


def linear_map_from_json(data):
    A = space_from_json(data["domain"])
    B = space_from_json(data.get("codomain", data["domain"]))
    return LinearMap(A, B, parse_vec(data["matrix"]))


def decomposition_to_json(d):
    if isinstance(d, PhiForm):
        return {"variant": "PhiForm", "epsilon": d.epsilon, "mu": rat(d.mu),
                "phi": linear_map_to_json(d.phi), "verified": True}
    if isinstance(d, ChiXi):
        m = d.domain.dim
        chi = {f"{i},{j}": vec(d.chi[i, j]) for i in range(m) for j in range(i + 1, m)}
        return {"variant": "ChiXi", "chi": chi, "xi": vec(d.xi),
                "domain": space_to_json(d.domain), "codomain": space_to_json(d.codomain),
                "verified": True}
    raise TypeError(f"not a decomposition: {type(d).__name__}")


_READERS = {
    "CurvatureTensor4": tensor_from_json,
    "BilinearSkewMap": skew_map_from_json,
    "LinearMap": linear_map_from_json,
}


def read_object(data):
    """Dispatch on ``type``; untyped documents are recognised by their keys."""
    if not isinstance(data, dict):
        raise InputError("expected a JSON object")
    if "fixture" in data and "payload" in data:
        data = data["payload"]
    kind = data.get("type")
    if kind is None:
        if "entries" in data:
            kind = "CurvatureTensor4"
        elif "blocks" in data:
            kind = "BilinearSkewMap"
        elif "matrix" in data:
            kind = "LinearMap"
    if kind not in _READERS:
        raise InputError(f"unrecognised payload type {kind!r}")
    try:
        return _READERS[kind](data)
    except KeyError as exc:
        raise InputError(f"missing field {exc.args[0]!r} in {kind}") from exc


def load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg}") from exc
    return read_object(data)


def dumps(payload):
    doc = dict(payload)
    doc["schema_version"] = SCHEMA_VERSION
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def to_json(obj):
    """Serializer for any library object that has a JSON form."""
    if isinstance(obj, CurvatureTensor4):
        return tensor_to_json(obj)
    if isinstance(obj, BilinearSkewMap):
        return skew_map_to_json(obj)
    if isinstance(obj, LinearMap):
        return linear_map_to_json(obj)
    if isinstance(obj, (ChiXi, PhiForm)):
        return decomposition_to_json(obj)
    if isinstance(obj, SignatureSpace):
        return space_to_json(obj)
    raise TypeError(f"no JSON form for {type(obj).__name__}")
