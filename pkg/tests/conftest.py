import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from rank2curv.curvature import make_T_chi_xi
from rank2curv.exactlin import ONE, LinearMap, SignatureSpace, basis_vector, identity, qarray, rank, zeros
from rank2curv.sampling import stream

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def small_ints(lo=-4, hi=4):
    return st.integers(min_value=lo, max_value=hi)


@st.composite
def int_matrices(draw, rows=None, cols=None, lo=-4, hi=4):
    r = draw(rows if rows is not None else st.integers(1, 6))
    c = draw(cols if cols is not None else st.integers(1, 6))
    data = draw(st.lists(st.lists(small_ints(lo, hi), min_size=c, max_size=c),
                         min_size=r, max_size=r))
    return qarray(data)


@st.composite
def signatures(draw, max_dim=8, min_q=0):
    n = draw(st.integers(max(1, min_q), max_dim))
    p = draw(st.integers(0, n - min_q))
    return SignatureSpace.standard(p, n - p)


def volume_bivector_fixture(p, q, seed=0, twist=False):
    """An admissible (chi, xi): chi(a_i, a_j) is a_i ^ a_j inside B = L^2 A + R xi.

    chi(a1, a2) is a nonzero bivector for independent a1, a2, so it is never
    parallel to xi.  ``twist`` applies a random invertible change of basis on
    B and adds a multiple of xi to chi, which keeps admissibility.
    """
    A = SignatureSpace.standard(p, q)
    m = A.dim
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    nb = len(pairs) + 1
    gen = stream(seed, "chi-xi-fixture", p, q)
    pb = int(gen.integers(0, 3))
    B = SignatureSpace.standard(pb, nb - pb)
    chi = zeros(m, m, nb)
    for k, (i, j) in enumerate(pairs):
        chi[i, j, k + 1] = ONE
        chi[j, i, k + 1] = -ONE
    xi = basis_vector(nb, 0)
    if twist:
        while True:
            c = qarray(gen.integers(-2, 3, size=(nb, nb)).tolist()) + 3 * identity(nb)
            if rank(c) == nb:
                break
        chi = np.einsum("ab,ijb->ija", c, chi)
        xi = c @ xi
        lam = qarray(gen.integers(-2, 3, size=(m, m)).tolist())
        lam = lam - lam.T
        chi = chi + np.einsum("ij,a->ija", lam, xi)
    return A, B, chi, xi


def chi_xi_map(p, q, seed=0, twist=False):
    A, B, chi, xi = volume_bivector_fixture(p, q, seed, twist)
    return make_T_chi_xi(A, B, chi, xi), chi, xi


def endo(space, rows):
    return LinearMap.endo(space, qarray(rows))


@pytest.fixture
def euclid5():
    return SignatureSpace.standard(0, 5)


@pytest.fixture
def lorentz15():
    return SignatureSpace.standard(1, 5)
