"""The three worked counterexamples as exact fixtures.

Basis layout on R^(p, q): e_i^- is index i - 1 and e_i^+ is index p + i - 1.
"""

from dataclasses import dataclass, field
from itertools import permutations

from .curvature import BilinearSkewMap
from .errors import BadParams
from .exactlin import LinearMap, SignatureSpace, basis_vector, zeros

NAMES = ("8.1", "8.2", "8.3")


@dataclass(frozen=True, eq=False)
class Fixture:
    name: str
    params: dict = field(default_factory=dict)
    payload: object = None


def minus(p, i):
    """Index of e_i^- (1-based i)."""
    return i - 1


def plus(p, i):
    """Index of e_i^+ (1-based i)."""
    return p + i - 1


def _parity(perm):
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


def volume_form_map(p=0):
    """T(v1, v2) with <T(v1, v2) v3, v4> = vol(s v1, s v2, v3, v4) on R^(0,4).

    s projects R^(p,4) onto its last four coordinates.
    """
    A = SignatureSpace.standard(p, 4)
    B = SignatureSpace.standard(0, 4)
    blocks = zeros(p + 4, p + 4, 4, 4)
    for i, j, k, l in permutations(range(4)):
        # the codomain is Euclidean, so the matrix entry [l, k] is <T e_k, e_l>
        blocks[p + i, p + j, l, k] = _parity((i, j, k, l))
    return BilinearSkewMap(A, B, blocks)


def phi_8_2(p):
    q = p + 1
    V = SignatureSpace.standard(p, q)
    m = zeros(V.dim, V.dim)
    for i in range(1, p + 1):
        target = basis_vector(V.dim, minus(p, i)) + basis_vector(V.dim, plus(p, i))
        m[:, minus(p, i)] = -target
        m[:, plus(p, i)] = target
    m[plus(p, p + 1), plus(p, p + 1)] = 1
    return LinearMap.endo(V, m)


def phi_8_3(p):
    q = p - 1
    V = SignatureSpace.standard(p, q)
    m = zeros(V.dim, V.dim)
    for i in range(1, q + 1):
        target = basis_vector(V.dim, minus(p, i)) + basis_vector(V.dim, plus(p, i))
        m[:, minus(p, i)] = -target
        m[:, plus(p, i)] = target
    return LinearMap.endo(V, m)


def fixture(name, p=None, q=None):
    if name == "8.1":
        p = 0 if p is None else p
        if q not in (None, 4):
            raise BadParams("fixture 8.1 lives on signature (p, 4)")
        if p < 0:
            raise BadParams("p must be non-negative")
        return Fixture(name, {"p": p, "q": 4}, volume_form_map(p))
    if name == "8.2":
        if p is None and q is not None:
            p = q - 1
        if p is None or (q is not None and q != p + 1) or p + 1 < 5:
            raise BadParams("fixture 8.2 needs q = p + 1 >= 5")
        return Fixture(name, {"p": p, "q": p + 1}, phi_8_2(p))
    if name == "8.3":
        if p is None and q is not None:
            p = q + 1
        if p is None or (q is not None and q != p - 1) or p - 1 < 5:
            raise BadParams("fixture 8.3 needs q = p - 1 >= 5")
        return Fixture(name, {"p": p, "q": p - 1}, phi_8_3(p))
    raise BadParams(f"unknown fixture {name!r}; expected one of {', '.join(NAMES)}")


def planes_8_2(p):
    """pi_i = span{e_1^+, e_i^+} for i = 2..p+1, keyed by i."""
    n = 2 * p + 1
    return {i: (basis_vector(n, plus(p, 1)), basis_vector(n, plus(p, i)))
            for i in range(2, p + 2)}


def timelike_planes_8_3(p):
    """pi_i^- = span{e_1^-, e_i^-} for i = 2..q+1, keyed by i."""
    n = 2 * p - 1
    return {i: (basis_vector(n, minus(p, 1)), basis_vector(n, minus(p, i)))
            for i in range(2, p + 1)}
