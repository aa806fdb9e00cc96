"""Algebraic curvature tensors, decoupled skew maps, and their plane operators.

Conventions: ``R(x, y, z, w) = <R(x, y) z, w>``, and the plane operator of a
spacelike plane is kept unnormalized together with its Gram determinant, so
that every invariant stays rational.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import Degenerate, DimensionMismatch, InputError, NotSpacelike, UnsupportedRank
from .exactlin import (
    Q,
    SignatureSpace,
    gram_of,
    is_zero,
    qarray,
    rank,
)


@dataclass(frozen=True, eq=False)
class CurvatureTensor4:
    space: SignatureSpace
    components: np.ndarray

    def __post_init__(self):
        c = qarray(self.components)
        object.__setattr__(self, "components", c)
        n = self.space.dim
        if c.shape != (n, n, n, n):
            raise DimensionMismatch(f"components of shape {c.shape} on a {n}-dim space")

    @property
    def dim(self):
        return self.space.dim

    def __call__(self, x, y, z, w):
        c = self.components
        for v in (x, y, z, w):
            c = np.tensordot(np.asarray(v, dtype=object), c, axes=(0, 0))
        return Q(c)

    def __eq__(self, other):
        if not isinstance(other, CurvatureTensor4):
            return NotImplemented
        return self.space == other.space and is_zero(self.components - other.components)

    __hash__ = None

    def scaled(self, c):
        return CurvatureTensor4(self.space, self.components * Q(c))

    def __neg__(self):
        return self.scaled(-1)

    def __add__(self, other):
        if self.space != other.space:
            raise DimensionMismatch("tensors on different spaces")
        return CurvatureTensor4(self.space, self.components + other.components)


@dataclass(frozen=True, eq=False)
class BilinearSkewMap:
    """Alternating bilinear T: A x A -> so(B).

    ``blocks[i, j]`` is the matrix of T(a_i, a_j) acting on B.
    """

    domain: SignatureSpace
    codomain: SignatureSpace
    blocks: np.ndarray

    def __post_init__(self):
        b = qarray(self.blocks)
        object.__setattr__(self, "blocks", b)
        m, n = self.domain.dim, self.codomain.dim
        if b.shape != (m, m, n, n):
            raise DimensionMismatch(f"blocks of shape {b.shape}, expected {(m, m, n, n)}")
        if not is_zero(b + b.transpose(1, 0, 2, 3)):
            raise InputError("T is not alternating in the domain")
        g = self.codomain.gram
        # each block must satisfy g @ t antisymmetric
        gb = np.einsum("ab,ijbc->ijac", g, b)
        if not is_zero(gb + gb.transpose(0, 1, 3, 2)):
            raise InputError("some T(a_i, a_j) is not skew-adjoint on the codomain")

    def __call__(self, a1, a2):
        a1 = np.asarray(a1, dtype=object)
        a2 = np.asarray(a2, dtype=object)
        return np.tensordot(a2, np.tensordot(a1, self.blocks, axes=(0, 0)), axes=(0, 0))

    def __eq__(self, other):
        if not isinstance(other, BilinearSkewMap):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and is_zero(self.blocks - other.blocks))

    __hash__ = None

    def scaled(self, c):
        return BilinearSkewMap(self.domain, self.codomain, self.blocks * Q(c))


def tensor_to_skew_map(R):
    """View R as T: V x V -> so(V) through R(x, y, z, w) = <T(x, y) z, w>."""
    ginv = R.space.gram_inv
    # block[i, j] = ginv @ K.T with K[z, w] = R[i, j, z, w]
    blocks = np.einsum("ab,ijcb->ijac", ginv, R.components)
    return BilinearSkewMap(R.space, R.space, blocks)


def skew_map_to_tensor(T):
    if T.domain != T.codomain:
        raise DimensionMismatch("only an endomorphic skew map is a 4-tensor on one space")
    g = T.codomain.gram
    # R[i, j, k, l] = <T(e_i, e_j) e_k, e_l> = (block.T @ g)[k, l]
    comps = np.einsum("ijak,al->ijkl", T.blocks, g)
    return CurvatureTensor4(T.domain, comps)


@dataclass(frozen=True)
class SymmetryReport:
    b_ok: bool
    c_ok: bool
    d_ok: bool

    @property
    def all_ok(self):
        return self.b_ok and self.c_ok and self.d_ok


def validate_symmetries(R):
    c = R.components
    b_ok = is_zero(c + c.transpose(1, 0, 2, 3)) and is_zero(c + c.transpose(0, 1, 3, 2))
    c_ok = is_zero(c - c.transpose(2, 3, 0, 1))
    # R(x,y,z,w) + R(y,z,x,w) + R(z,x,y,w)
    d_ok = is_zero(c + c.transpose(2, 0, 1, 3) + c.transpose(1, 2, 0, 3))
    return SymmetryReport(bool(b_ok), bool(c_ok), bool(d_ok))


def curvature_operator(R, x, y):
    """Matrix M of R(x, y), i.e. <M z, w> = R(x, y, z, w)."""
    x = np.asarray(x, dtype=object)
    y = np.asarray(y, dtype=object)
    if x.shape != (R.dim,) or y.shape != (R.dim,):
        raise DimensionMismatch("plane vectors have the wrong length")
    k = np.tensordot(y, np.tensordot(x, R.components, axes=(0, 0)), axes=(0, 0))
    return R.space.gram_inv @ k.T


def jacobi(R, x):
    """Matrix of y -> R(y, x) x."""
    x = np.asarray(x, dtype=object)
    # K[y, w] = R(y, x, x, w)
    k = np.tensordot(R.components, x, axes=(1, 0))
    k = np.tensordot(k, x, axes=(1, 0))
    return R.space.gram_inv @ k.T


@dataclass(frozen=True, eq=False)
class PlaneOperator:
    """Unnormalized R(v1, v2) together with the Gram determinant of span{v1, v2}.

    The normalized skew-symmetric curvature operator is op / sqrt(gramdet).
    """

    op: np.ndarray
    gramdet: object

    @property
    def rank(self):
        return rank(self.op)


def plane_gram(space, v1, v2):
    g = gram_of(space, [v1, v2])
    return g, Q(g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0])


def _check_plane(space, v1, v2, allow_nonspacelike):
    g, det = plane_gram(space, v1, v2)
    if det == 0:
        if rank(np.array([v1, v2], dtype=object)) < 2:
            raise Degenerate("v1 and v2 are linearly dependent")
        if not allow_nonspacelike:
            raise NotSpacelike("the plane is degenerate")
        raise Degenerate("the induced inner product on the plane is degenerate")
    if not allow_nonspacelike and not (det > 0 and g[0, 0] > 0):
        raise NotSpacelike("the plane is not spacelike")
    return det


def plane_operator(R, v1, v2, allow_nonspacelike=False):
    """PlaneOperator of a CurvatureTensor4 or BilinearSkewMap on span{v1, v2}.

    With ``allow_nonspacelike`` any non-degenerate plane is accepted (used to
    profile ranks on timelike planes); gramdet may then be negative.
    """
    v1 = qarray(v1)
    v2 = qarray(v2)
    if isinstance(R, CurvatureTensor4):
        space = R.space
        det = _check_plane(space, v1, v2, allow_nonspacelike)
        op = curvature_operator(R, v1, v2)
    elif isinstance(R, BilinearSkewMap):
        space = R.domain
        if v1.shape != (space.dim,) or v2.shape != (space.dim,):
            raise DimensionMismatch("plane vectors have the wrong length")
        det = _check_plane(space, v1, v2, allow_nonspacelike)
        op = R(v1, v2)
    else:
        raise TypeError(f"expected a tensor or skew map, got {type(R).__name__}")
    return PlaneOperator(op, det)


def make_R_phi(phi):
    """R_phi(x, y, z, w) = <phi y, z><phi x, w> - <phi x, z><phi y, w>."""
    if not phi.is_endomorphism:
        raise DimensionMismatch("R_phi needs phi: V -> V")
    # P[a, b] = <phi e_a, e_b>
    P = phi.matrix.T @ phi.codomain.gram
    outer = np.multiply.outer(P, P)  # outer[a, b, c, d] = P[a, b] P[c, d]
    comps = outer.transpose(2, 0, 1, 3) - outer.transpose(0, 2, 1, 3)
    return CurvatureTensor4(phi.domain, comps)


def make_T_phi(phi):
    """T_phi(a1, a2) b = <phi a2, b> phi a1 - <phi a1, b> phi a2."""
    cols = phi.matrix.T  # cols[i] = phi(a_i)
    gcols = cols @ phi.codomain.gram  # gcols[i] = (G phi(a_i)).T
    outer = np.einsum("ia,jb->ijab", cols, gcols)
    return BilinearSkewMap(phi.domain, phi.codomain, outer - outer.transpose(1, 0, 2, 3))


def make_T_chi_xi(domain, codomain, chi, xi):
    """T_{chi,xi}(a1, a2) b = <chi(a1, a2), b> xi - <xi, b> chi(a1, a2).

    ``chi`` is an array of shape (dim A, dim A, dim B) with chi[i, j] = chi(a_i, a_j).
    """
    chi = qarray(chi)
    xi = qarray(xi)
    m, n = domain.dim, codomain.dim
    if chi.shape != (m, m, n) or xi.shape != (n,):
        raise DimensionMismatch("chi or xi has the wrong shape")
    if not is_zero(chi + chi.transpose(1, 0, 2)):
        raise InputError("chi is not alternating")
    g = codomain.gram
    gchi = chi @ g
    gxi = g @ xi
    blocks = (np.einsum("a,ijb->ijab", xi, gchi)
              - np.einsum("ija,b->ijab", chi, gxi))
    return BilinearSkewMap(domain, codomain, blocks)


def evaluate_chi(chi, a1, a2):
    chi = np.asarray(chi, dtype=object)
    a1 = np.asarray(a1, dtype=object)
    a2 = np.asarray(a2, dtype=object)
    return np.tensordot(a2, np.tensordot(a1, chi, axes=(0, 0)), axes=(0, 0))


# -- two-forms ---------------------------------------------------------------

def omega(t, space):
    """The 2-form omega(t)(b1, b2) = <t b1, b2> of a skew-adjoint t."""
    t = qarray(t)
    if t.shape != (space.dim, space.dim):
        raise DimensionMismatch("operator does not act on this space")
    w = t.T @ space.gram
    if not is_zero(w + w.T):
        raise InputError("operator is not skew-adjoint")
    return w


def wedge_square(w):
    """Totally antisymmetric 4-array proportional to omega ^ omega.

    (w^w)_{abcd} / 8 = w_ab w_cd - w_ac w_bd + w_ad w_bc.
    """
    w = qarray(w)
    outer = np.multiply.outer(w, w)  # [a,b,c,d] = w_ab w_cd
    return (outer
            - outer.transpose(0, 2, 1, 3)
            + outer.transpose(0, 2, 3, 1))


def wedge_square_zero(w):
    return is_zero(wedge_square(w))


# -- Jordan type -------------------------------------------------------------

class JordanTag(str, Enum):
    ZERO = "Zero"
    IMAGINARY_PAIR = "ImaginaryPair"
    REAL_PAIR = "RealPair"
    NILPOTENT2 = "Nilpotent2"
    NILPOTENT3 = "Nilpotent3"


@dataclass(frozen=True)
class JordanType:
    """Complex Jordan type of a rank <= 2 skew operator.

    ``lambda_sq`` is the squared modulus of the nonzero eigenvalues of the
    normalized operator; it is None for the nilpotent and zero types.
    """

    tag: JordanTag
    lambda_sq: object = None

    def __str__(self):
        if self.lambda_sq is None:
            return self.tag.value
        return f"{self.tag.value}(lambda_sq={self.lambda_sq})"


def jordan_type(po):
    m = po.op
    r = rank(m)
    if r == 0:
        return JordanType(JordanTag.ZERO)
    if r != 2:
        raise UnsupportedRank(f"operator has rank {r}; only ranks 0 and 2 are classified")
    m2 = m @ m
    trace = sum((m2[i, i] for i in range(m2.shape[0])), Q(0))
    c = Q(trace / (2 * Q(po.gramdet)))
    if c > 0:
        return JordanType(JordanTag.REAL_PAIR, c)
    if c < 0:
        return JordanType(JordanTag.IMAGINARY_PAIR, -c)
    if is_zero(m2):
        return JordanType(JordanTag.NILPOTENT2)
    if not is_zero(m2 @ m):
        raise UnsupportedRank("trace(M^2) = 0 and M^3 != 0: input is not a rank 2 skew operator")
    return JordanType(JordanTag.NILPOTENT3)
