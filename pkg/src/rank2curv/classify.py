"""Admissibility, self-adjointness, and the Ivanov-Petrova tests for R_phi."""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .curvature import JordanTag, evaluate_chi, jordan_type, plane_operator
from .errors import DimensionMismatch, NotAdmissible, NotRankTwo, NotSelfAdjoint
from .exactlin import (
    Q,
    gram_of,
    is_symmetric,
    is_zero,
    kernel_basis,
    qarray,
    rank,
    signature_of_symmetric,
)
from .sampling import random_spacelike_plane


def is_self_adjoint(phi):
    if not phi.is_endomorphism:
        raise DimensionMismatch("self-adjointness needs phi: V -> V")
    return is_symmetric(phi.domain.gram @ phi.matrix)


def is_admissible_phi(phi):
    """True iff ker(phi) contains no spacelike vector.

    Decided exactly: the restriction of the domain inner product to the kernel
    must be negative semidefinite.
    """
    ker = kernel_basis(phi.matrix)
    if ker.dim == 0:
        return True
    pos, _, _ = signature_of_symmetric(gram_of(phi.domain, ker.vectors()))
    return pos == 0


@dataclass(frozen=True)
class SampledVerdict:
    passed: bool
    samples: int
    witness: tuple = None
    probabilistic: bool = True


def is_admissible_chi_xi(domain, chi, xi, sample_count=1000, seed=0, bound=3):
    """Sample spacelike planes and check that chi(a1, a2) and xi stay independent.

    A failure is certain (it comes with a witness plane); a pass only means no
    counterexample was drawn.
    """
    chi = qarray(chi)
    xi = qarray(xi)
    for k in range(sample_count):
        a1, a2 = random_spacelike_plane(domain, seed, bound, index=k, key="chi-xi")
        c = evaluate_chi(chi, a1, a2)
        if rank(np.array([c, xi], dtype=object)) < 2:
            return SampledVerdict(False, k + 1, (a1, a2))
    return SampledVerdict(True, sample_count)


class IpTag(str, Enum):
    CONFORMAL = "ConformalC"
    TOTALLY_ISOTROPIC = "TotallyIsotropic"
    NOT_IP = "NotIP"


@dataclass(frozen=True)
class IpVerdict:
    tag: IpTag
    C: object = None
    within_hypotheses: bool = True


def ip_class(phi):
    """Exact Ivanov-Petrova test for R_phi with phi admissible and self-adjoint.

    With G the Gram matrix and P the matrix of phi: TotallyIsotropic iff
    P^T G P = 0, ConformalC(C) iff P^T G P = C G.  ``within_hypotheses`` is
    False when q < 5, where the classification is not claimed.
    """
    if not is_self_adjoint(phi):
        raise NotSelfAdjoint("ip_class needs a self-adjoint phi")
    if not is_admissible_phi(phi):
        raise NotAdmissible("ker(phi) contains a spacelike vector")
    g = phi.domain.gram
    pg = phi.matrix.T @ g @ phi.matrix
    ok = phi.domain.q >= 5
    if is_zero(pg):
        return IpVerdict(IpTag.TOTALLY_ISOTROPIC, None, ok)
    i, j = next((i, j) for i in range(g.shape[0]) for j in range(g.shape[1]) if g[i, j] != 0)
    c = Q(pg[i, j] / g[i, j])
    if c != 0 and is_zero(pg - c * g):
        return IpVerdict(IpTag.CONFORMAL, c, ok)
    return IpVerdict(IpTag.NOT_IP, None, ok)


@dataclass(frozen=True)
class SamplingVerdict:
    """Outcome of sampling Jordan types over spacelike planes.

    ``witness`` is ((plane_a, type_a), (plane_b, type_b)) when the type varies.
    """

    constant: bool
    jordan: object = None
    witness: tuple = None
    samples: int = 0


def is_ip_by_sampling(R, sample_count=200, seed=0, bound=3, forced_planes=()):
    planes = list(forced_planes)
    planes += [random_spacelike_plane(R.space, seed, bound, index=k, key="ip")
               for k in range(sample_count)]
    first = None
    for n, (v1, v2) in enumerate(planes, 1):
        po = plane_operator(R, v1, v2)
        jt = jordan_type(po)
        if jt.tag is JordanTag.ZERO:
            raise NotRankTwo("R(pi) vanishes on a sampled spacelike plane")
        if first is None:
            first = ((v1, v2), jt)
        elif jt != first[1]:
            return SamplingVerdict(False, None, (first, ((v1, v2), jt)), n)
    return SamplingVerdict(True, first[1] if first else None, None, len(planes))


@dataclass(frozen=True)
class RankSurvey:
    ranks: list = field(default_factory=list)
    witness: tuple = None

    @property
    def constant_rank_two(self):
        return self.witness is None


def survey_rank(R, sample_count=200, seed=0, bound=3):
    """Rank of R(pi) over sampled spacelike planes; stops at the first rank != 2."""
    space = R.space if hasattr(R, "space") else R.domain
    ranks = []
    for k in range(sample_count):
        v1, v2 = random_spacelike_plane(space, seed, bound, index=k, key="rank")
        r = plane_operator(R, v1, v2).rank
        ranks.append(r)
        if r != 2:
            return RankSurvey(ranks, (v1, v2))
    return RankSurvey(ranks)


def rank_profile(R, planes, allow_nonspacelike=True):
    """Ranks of R on the given planes; with allow_nonspacelike, timelike planes are accepted."""
    return [plane_operator(R, v1, v2, allow_nonspacelike=allow_nonspacelike).rank
            for v1, v2 in planes]
