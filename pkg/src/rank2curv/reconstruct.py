"""Decompose an admissible rank 2 skew map as T_{chi,xi} or eps * mu * T_phi.

The line map Phi([a]) is the common line of Range(T(a, a2)) and
Range(T(a, a3)) for partners spanning a spacelike 3-space with ``a``.  When
Phi is constant the map is of chi/xi type; otherwise Phi is linearized on a
spacelike spanning family.  Every result is checked by rebuilding T exactly.
"""

from dataclasses import dataclass

import gmpy2
import numpy as np
from gmpy2 import mpq

from .classify import survey_rank
from .curvature import BilinearSkewMap, make_T_chi_xi, make_T_phi
from .errors import (
    DegenerateLine,
    DomainTooSmall,
    InputError,
    NotInSpan,
    NotRankTwo,
    NotSpacelike,
    SpanSolveFailed,
    SpanningFamilyFailed,
    VerificationFailed,
)
from .exactlin import (
    LinearMap,
    Q,
    SignatureSpace,
    congruence_diagonalize,
    identity,
    intersect,
    inverse,
    qarray,
    range_of,
    rank,
    solve_in_span,
    span,
)
from .sampling import (
    is_spacelike_subspace,
    random_spacelike_vector,
    spanning_spacelike_family,
    stream,
)

MIN_DOMAIN_Q = 5


@dataclass(frozen=True, eq=False)
class Flattener:
    """Involution psi on B with <psi b1, b2>_B positive definite.

    ``positive_gram`` is gram_B @ psi, the Gram matrix of (b1, b2)_+.
    """

    space: SignatureSpace
    psi: np.ndarray
    positive_gram: np.ndarray

    @property
    def positive_space(self):
        return SignatureSpace(0, self.space.dim, self.positive_gram)

    def apply(self, T):
        """psi . T, an alternating map into so(B, (.,.)_+)."""
        blocks = np.einsum("ab,ijbc->ijac", self.psi, T.blocks)
        return BilinearSkewMap(T.domain, self.positive_space, blocks)


def flatten(space):
    if space.p == 0:
        return Flattener(space, identity(space.dim), space.gram.copy())
    c, d = congruence_diagonalize(space.gram)
    signs = identity(space.dim)
    for i, x in enumerate(d):
        if x < 0:
            signs[i, i] = -signs[i, i]
    psi = c @ signs @ inverse(c)
    return Flattener(space, psi, space.gram @ psi)


@dataclass(frozen=True, eq=False)
class ChiXi:
    """T = T_{chi,xi}.  ``chi[i, j]`` is chi(a_i, a_j)."""

    domain: SignatureSpace
    codomain: SignatureSpace
    chi: np.ndarray
    xi: np.ndarray
    probes: tuple = ()

    variant = "ChiXi"

    def rebuild(self):
        return make_T_chi_xi(self.domain, self.codomain, self.chi, self.xi)


@dataclass(frozen=True, eq=False)
class PhiForm:
    """T = epsilon * mu * T_phi with mu > 0.

    The square root of mu is left to the caller; absorbing it would leave Q.
    """

    epsilon: int
    mu: object
    phi: LinearMap
    probes: tuple = ()

    variant = "PhiForm"

    def rebuild(self):
        return make_T_phi(self.phi).scaled(self.epsilon * self.mu)


def verify_decomposition(T, d):
    try:
        return d.rebuild() == T
    except InputError:
        return False


def _confirming_partner(space, a, partners, seed=0):
    """A vector b outside span{a, partners} with span{a, b} spacelike."""
    n = space.dim
    base = np.array([a] + list(partners), dtype=object)
    r = len(partners) + 1

    def candidates():
        for k in range(n):
            yield qarray([1 if i == k else 0 for i in range(n)])
        gen = stream(seed, "confirm")
        for row in gen.integers(-2, 3, size=(400, n)).tolist():
            yield qarray(row)

    for b in candidates():
        if (rank(np.vstack([base, b[None, :]])) == r + 1
                and is_spacelike_subspace(space, [a, b])):
            return b
    return None


def phi_line(T, a, partners, confirm=True):
    """Phi([a]): the common line of Range(T(a, b)) over the partners b.

    With ``confirm`` the line is also checked against one further partner
    outside span{a, partners}; for admissible T on q_A >= 5 it lies in every
    such range.  On q_A = 4 (the volume form example) it does not, and the
    call raises DegenerateLine.
    """
    a = qarray(a)
    partners = [qarray(b) for b in partners]
    if len(partners) < 2:
        raise InputError("phi_line needs at least two partner vectors")
    if rank(np.array([a] + partners, dtype=object)) != len(partners) + 1:
        raise InputError("a and its partners must be linearly independent")
    for b in partners:
        if not is_spacelike_subspace(T.domain, [a, b]):
            raise NotSpacelike("span{a, partner} is not a spacelike plane")
    line = range_of(T(a, partners[0]))
    for b in partners[1:]:
        line = intersect(line, range_of(T(a, b)))
    if line.dim != 1:
        raise DegenerateLine(f"range intersection has dimension {line.dim}, expected 1")
    if confirm:
        b = _confirming_partner(T.domain, a, partners)
        if b is not None and not range_of(T(a, b)).contains(line.vectors()[0]):
            raise DegenerateLine("the candidate line is not in every range T(a, b)")
    return line


class _LineFinder:
    """Computes Phi-lines, choosing partners that span a spacelike 3-space with a."""

    def __init__(self, T, family, seed):
        self.T = T
        self.family = family
        self.seed = seed

    def partners(self, a):
        A = self.T.domain
        fam = self.family
        for i in range(len(fam)):
            for j in range(i + 1, len(fam)):
                if is_spacelike_subspace(A, [a, fam[i], fam[j]]):
                    return fam[i], fam[j]
        gen = stream(self.seed, "partners")
        for _ in range(5000):
            v, w = (qarray(r) for r in gen.integers(-3, 4, size=(2, A.dim)).tolist())
            if is_spacelike_subspace(A, [a, v, w]):
                return v, w
        raise SpanningFamilyFailed("no spacelike partners found for a probe vector")

    def line(self, a):
        return phi_line(self.T, a, self.partners(a))


def _first_nonzero(m):
    for idx in np.ndindex(m.shape):
        if m[idx] != 0:
            return idx
    return None


def decompose(T, seed=0, extra_probes=20, rank_checks=10):
    """Write an admissible T as T_{chi,xi} or eps * mu * T_phi, exactly.

    Raises DomainTooSmall for q_A < 5, NotRankTwo if a sampled spacelike plane
    has rank != 2, and VerificationFailed if T is of neither form.
    """
    A, B = T.domain, T.codomain
    if A.q < MIN_DOMAIN_Q:
        raise DomainTooSmall(f"q_A = {A.q} < {MIN_DOMAIN_Q}: the line map is not defined")
    survey = survey_rank(T, rank_checks, seed)
    if not survey.constant_rank_two:
        raise NotRankTwo(f"T(pi) has rank {survey.ranks[-1]} on a sampled spacelike plane")

    flat = flatten(B)
    PT = flat.apply(T)
    family = spanning_spacelike_family(A, seed)
    finder = _LineFinder(PT, family, seed)

    lines = [finder.line(s) for s in family]
    probe_vecs = [random_spacelike_vector(A, seed, 2, index=k, key="probe")
                  for k in range(extra_probes)]
    probe_lines = [finder.line(a) for a in probe_vecs]
    probes = tuple(
        (a, span([flat.psi @ v for v in ln.vectors()], B.dim))
        for a, ln in zip(list(family) + probe_vecs, lines + probe_lines))

    if all(ln == lines[0] for ln in lines + probe_lines):
        d = _constant_branch(PT, flat, lines[0], probes)
    else:
        d = _injective_branch(PT, flat, family, lines, finder, probes)
    if not verify_decomposition(T, d):
        raise VerificationFailed("rebuilt map differs from the input")
    return d


def _constant_branch(PT, flat, line, probes):
    xi_hat = line.vectors()[0]
    norm = Q(xi_hat @ flat.positive_gram @ xi_hat)
    chi_hat = -np.einsum("ijab,b->ija", PT.blocks, xi_hat) / norm
    chi = np.einsum("ab,ijb->ija", flat.psi, chi_hat)
    xi = flat.psi @ xi_hat
    return ChiXi(PT.domain, flat.space, chi, xi, probes)


def _injective_branch(PT, flat, family, lines, finder, probes):
    A = PT.domain
    b1 = lines[0].vectors()[0]
    images = [b1]
    for s, ln in zip(family[1:], lines[1:]):
        c = ln.vectors()[0]
        u = finder.line(family[0] + s).vectors()[0]
        try:
            alpha, beta = solve_in_span(u, [b1, c])
        except (NotInSpan, InputError) as exc:
            raise SpanSolveFailed("Phi(s1 + si) is not in Phi(s1) + Phi(si)") from exc
        if alpha == 0 or beta == 0:
            raise SpanSolveFailed("degenerate linearization coefficients")
        images.append((beta / alpha) * c)
    S = np.array(family, dtype=object).T
    phi_hat = np.array(images, dtype=object).T @ inverse(S)
    T_hat = make_T_phi(LinearMap(A, flat.positive_space, phi_hat))

    m_true = PT(family[0], family[1])
    m_hat = T_hat(family[0], family[1])
    idx = _first_nonzero(m_hat)
    if idx is None or m_true[idx] == 0:
        raise VerificationFailed("cannot match the scale of T against T_phi")
    mu = Q(m_true[idx] / m_hat[idx])
    eps = 1 if mu > 0 else -1
    phi = LinearMap(A, flat.space, flat.psi @ phi_hat)
    return PhiForm(eps, abs(mu), phi, probes)


def line_of_image(phi, a):
    """[phi(a)] as a Subspace, for comparing against computed Phi-lines."""
    return span([phi(a)], phi.codomain.dim)


def canonical_sign(phi):
    """phi or -phi, whichever has a positive first nonzero matrix entry."""
    idx = _first_nonzero(phi.matrix)
    if idx is not None and phi.matrix[idx] < 0:
        return -phi
    return phi


def rational_sqrt(x):
    """Exact square root of a non-negative rational, or None if irrational."""
    x = Q(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    if gmpy2.is_square(n) and gmpy2.is_square(d):
        return mpq(gmpy2.isqrt(n), gmpy2.isqrt(d))
    return None


__all__ = [
    "ChiXi",
    "Flattener",
    "PhiForm",
    "canonical_sign",
    "decompose",
    "flatten",
    "line_of_image",
    "phi_line",
    "rational_sqrt",
    "verify_decomposition",
]
