"""Graph hypersurfaces F(y) = y + 1/2 <phi y, y> e and their induced curvature.

The ambient space W is V plus one extra direction e with <e, e> = kappa.
Usually kappa = epsilon = +-1.  verify_realization also allows kappa =
epsilon * mu, for a scale mu that has no rational square root.  The second
fundamental form is taken against the unnormalized normal N and divided by
<N, N>, which keeps every quantity rational.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .classify import is_self_adjoint, survey_rank
from .curvature import (
    CurvatureTensor4,
    make_R_phi,
    plane_operator,
    tensor_to_skew_map,
    validate_symmetries,
)
from .errors import (
    DegeneratePoint,
    DimensionMismatch,
    InputError,
    NotRankTwo,
    NotSelfAdjoint,
    VerificationFailed,
)
from .exactlin import (
    ONE,
    LinearMap,
    Q,
    SignatureSpace,
    basis_vector,
    kernel_basis,
    qarray,
    zeros,
)
from .reconstruct import PhiForm, canonical_sign, decompose, rational_sqrt
from .sampling import random_spacelike_plane, stream

NEAR_ORIGIN_RADIUS = Fraction(1, 8)
GRID_STEPS = 8


@dataclass(frozen=True, eq=False)
class Immersion:
    phi: LinearMap
    epsilon: int
    scale: object = ONE

    @property
    def space(self):
        return self.phi.domain

    @property
    def dim(self):
        return self.space.dim

    @property
    def normal_weight(self):
        """<e, e> for the extra ambient direction."""
        return self.epsilon * self.scale

    @property
    def ambient(self):
        m = self.dim
        g = zeros(m + 1, m + 1)
        g[:m, :m] = self.space.gram
        g[m, m] = Q(self.normal_weight)
        return SignatureSpace.from_gram(g)

    @property
    def form(self):
        """P = G phi, the symmetric matrix of <phi x, y>."""
        return self.space.gram @ self.phi.matrix

    def point(self, y):
        y = _point(self, y)
        return np.append(y, Q(y @ self.form @ y) / 2)

    def tangents(self, y):
        """Rows dF/dy_i = e_i + (P y)_i e."""
        y = _point(self, y)
        m = self.dim
        d = zeros(m, m + 1)
        d[:, :m] = np.array([basis_vector(m, i) for i in range(m)], dtype=object)
        d[:, m] = self.form @ y
        return d

    def hessian(self):
        """d^2 F / dy_i dy_j = P_ij e, the same at every point."""
        m = self.dim
        h = zeros(m, m, m + 1)
        h[:, :, m] = self.form
        return h


def _point(imm, y):
    y = qarray(y)
    if y.shape != (imm.dim,):
        raise DimensionMismatch(f"point of shape {y.shape} on a {imm.dim}-dimensional chart")
    return y


def embed(phi, epsilon, scale=1):
    if not phi.is_endomorphism:
        raise DimensionMismatch("embed needs phi: V -> V")
    if not is_self_adjoint(phi):
        raise NotSelfAdjoint("embed needs a self-adjoint phi")
    if epsilon not in (1, -1):
        raise InputError(f"epsilon must be +1 or -1, got {epsilon!r}")
    scale = Q(scale)
    if scale <= 0:
        raise InputError("scale must be positive")
    return Immersion(phi, int(epsilon), scale)


@dataclass(frozen=True, eq=False)
class PolyMetric:
    """g(y) = constant + sum_kl quadratic[:, :, k, l] y_k y_l."""

    constant: np.ndarray
    quadratic: np.ndarray

    def __call__(self, y):
        y = qarray(y)
        return self.constant + np.einsum("ijkl,k,l->ij", self.quadratic, y, y)


def poly_metric(imm):
    p = imm.form
    quad = Q(imm.normal_weight) * np.einsum("ik,jl->ijkl", p, p)
    return PolyMetric(imm.space.gram.copy(), quad)


def first_fundamental_form(imm, y):
    return poly_metric(imm)(_point(imm, y))


def pullback_metric(imm, y):
    """dF . gram_W . dF^T, computed from the tangent vectors directly."""
    d = imm.tangents(y)
    return d @ imm.ambient.gram @ d.T


def normal(imm, y):
    """Unnormalized normal with last coordinate 1."""
    d = imm.tangents(y)
    ker = kernel_basis(d @ imm.ambient.gram)
    n = ker.vectors()[0]
    return n / n[-1]


def second_fundamental_form(imm, y):
    """(L, <N, N>) with L_ij = <d_i d_j F, N> for the unnormalized normal N."""
    n = normal(imm, y)
    gw = imm.ambient.gram
    L = np.einsum("ija,ab,b->ij", imm.hessian(), gw, n)
    return L, Q(n @ gw @ n)


def gauss_curvature_tensor(imm, y):
    L, nn = second_fundamental_form(imm, y)
    if nn == 0:
        raise DegeneratePoint(f"<N, N> = 0 at {list(map(str, qarray(y)))}")
    try:
        space = SignatureSpace.from_gram(first_fundamental_form(imm, y))
    except InputError as exc:
        raise DegeneratePoint("induced metric is degenerate") from exc
    comps = (np.einsum("il,jk->ijkl", L, L) - np.einsum("ik,jl->ijkl", L, L)) / nn
    return CurvatureTensor4(space, comps)


def metric_second_derivatives(imm):
    """d_a d_b g_ij, read off the quadratic coefficients: [a, b, i, j]."""
    quad = poly_metric(imm).quadratic
    return (quad + quad.transpose(0, 1, 3, 2)).transpose(2, 3, 0, 1)


def metric_second_derivatives_fd(imm):
    """Same as metric_second_derivatives, by central differences of g.

    Differences of a quadratic are exact, so this is an independent check on
    the coefficient extraction.  It also confirms dg(0) = 0.
    """
    m = imm.dim
    g = poly_metric(imm)
    e = [basis_vector(m, i) for i in range(m)]
    for a in range(m):
        if any(x != 0 for x in (g(e[a]) - g(-e[a])).ravel()):
            raise VerificationFailed("first derivatives of g do not vanish at 0")
    d2 = zeros(m, m, m, m)
    for a in range(m):
        for b in range(m):
            s, t = e[a] + e[b], e[a] - e[b]
            d2[a, b] = (g(s) - g(t) - g(-t) + g(-s)) / 4
    return d2


def origin_curvature_from_metric(imm):
    """R_ijkl(0) = 1/2 (g_jl,ik + g_ik,jl - g_jk,il - g_il,jk), valid where dg = 0."""
    d2 = metric_second_derivatives(imm)
    comps = (d2.transpose(0, 2, 1, 3) + d2.transpose(2, 0, 3, 1)
             - d2.transpose(0, 2, 3, 1) - d2.transpose(2, 0, 1, 3)) / 2
    return CurvatureTensor4(imm.space, comps)


def shape_operator_origin(imm):
    """epsilon * phi (for scale 1 this is G^-1 L(0))."""
    return imm.phi.scaled(imm.epsilon)


def germ_radius(imm):
    """1/8 shrunk by the size of kappa * P, so the induced metric keeps its signature.

    With c >= max(1, |P|_inf * max(1, |kappa|)) and |y|_max <= 1/(8c), the
    perturbation kappa (Py)(Py)^T has spectral norm at most dim/64 < 1.
    """
    p = imm.form
    row = max(sum(abs(x) for x in r) for r in p) if p.size else 0
    c = max(1, math.ceil(row * max(1, abs(Q(imm.normal_weight)))))
    return NEAR_ORIGIN_RADIUS / c


def near_origin_points(dim, seed, count, radius=NEAR_ORIGIN_RADIUS, steps=GRID_STEPS):
    """Nonzero grid points k * radius / steps with |k| <= steps in each coordinate."""
    gen = stream(seed, "near-origin", dim)
    unit = Q(radius) / steps
    out = []
    while len(out) < count:
        k = gen.integers(-steps, steps + 1, size=dim).tolist()
        if any(k):
            out.append(qarray(k) * unit)
    return out


@dataclass
class RealizationReport:
    ok: bool
    epsilon: int
    phi: LinearMap
    scale: object = ONE
    origin_exact: bool = False
    christoffel_exact: bool = False
    rank_samples: list = field(default_factory=list)


def verify_realization(R, seed=0, points=10, planes=20, rank_checks=20):
    """Factor R = kappa R_phi, embed, and check the induced curvature.

    ``scale`` in the report is 1 whenever mu had a rational square root
    (absorbed into phi); otherwise the ambient normal weight carries it.
    """
    if not validate_symmetries(R).all_ok:
        raise NotRankTwo("R is not an algebraic curvature tensor")
    survey = survey_rank(R, rank_checks, seed)
    if not survey.constant_rank_two:
        raise NotRankTwo(f"R(pi) has rank {survey.ranks[-1]} on a sampled spacelike plane")
    d = decompose(tensor_to_skew_map(R), seed=seed)
    if not isinstance(d, PhiForm):
        raise VerificationFailed("R factors through chi/xi, not R_phi")
    phi, mu = d.phi, d.mu
    root = rational_sqrt(mu)
    if root is not None:
        phi, mu = phi.scaled(root), ONE
    phi = canonical_sign(phi)
    if not is_self_adjoint(phi):
        raise VerificationFailed("recovered phi is not self-adjoint")
    imm = embed(phi, d.epsilon, mu)
    if make_R_phi(phi).scaled(d.epsilon * mu) != R:
        raise VerificationFailed("R != epsilon mu R_phi")

    origin_ok = gauss_curvature_tensor(imm, zeros(imm.dim)) == R
    christoffel_ok = origin_curvature_from_metric(imm) == R
    samples = []
    for k, y in enumerate(near_origin_points(imm.dim, seed, points, germ_radius(imm))):
        try:
            Ry = gauss_curvature_tensor(imm, y)
        except DegeneratePoint:
            samples.append({"point": y, "ranks": None, "degenerate": True})
            continue
        ranks = sorted({plane_operator(Ry, *random_spacelike_plane(
            Ry.space, seed, 3, index=k * planes + j, key="realize")).rank
            for j in range(planes)})
        samples.append({"point": y, "ranks": ranks, "degenerate": False})
    ranks_ok = all(s["ranks"] == [2] for s in samples)
    return RealizationReport(origin_ok and christoffel_ok and ranks_ok, d.epsilon, phi, mu,
                             origin_ok, christoffel_ok, samples)
