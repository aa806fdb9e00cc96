import pytest

from rank2curv.classify import is_self_adjoint
from rank2curv.errors import BadParams
from rank2curv.exactlin import basis_vector, is_zero, rank
from rank2curv.fixtures import fixture, minus, plus, planes_8_2, timelike_planes_8_3


def test_8_1_volume_form():
    T = fixture("8.1", p=0).payload
    f = [basis_vector(4, i) for i in range(4)]
    assert list(T(f[0], f[1]) @ f[2]) == list(f[3])
    assert list(T(f[0], f[1]) @ f[3]) == list(-f[2])
    assert list(T(f[1], f[0]) @ f[2]) == list(-f[3])


def test_8_1_with_timelike_directions_factors_through_the_projection():
    fx = fixture("8.1", p=2)
    T = fx.payload
    assert fx.params == {"p": 2, "q": 4}
    assert T.domain.dim == 6 and T.codomain.dim == 4
    for i in range(2):
        assert is_zero(T.blocks[i])
        assert is_zero(T.blocks[:, i])
    assert is_zero(T.blocks[2:, 2:] - fixture("8.1", p=0).payload.blocks)


def test_8_2_map():
    p = 4
    phi = fixture("8.2", p=p).payload
    n = 2 * p + 1
    top = basis_vector(n, plus(p, p + 1))
    assert list(phi(top)) == list(top)
    for i in range(1, p + 1):
        s = basis_vector(n, minus(p, i)) + basis_vector(n, plus(p, i))
        assert list(phi(basis_vector(n, plus(p, i)))) == list(s)
        assert list(phi(basis_vector(n, minus(p, i)))) == list(-s)
    assert is_self_adjoint(phi)
    assert rank(phi.matrix) == 1 + p


def test_8_3_map():
    p = 6
    phi = fixture("8.3", p=p).payload
    assert (phi.domain.p, phi.domain.q) == (6, 5)
    assert is_zero(phi(basis_vector(11, minus(p, p))))
    assert is_self_adjoint(phi)


def test_plane_indexing():
    assert sorted(planes_8_2(4)) == [2, 3, 4, 5]
    assert sorted(timelike_planes_8_3(6)) == [2, 3, 4, 5, 6]


@pytest.mark.parametrize("name, p, q", [
    ("8.1", 0, 5), ("8.1", -1, None), ("8.2", 3, None), ("8.2", 4, 6),
    ("8.3", 5, None), ("8.3", 7, 5), ("8.2", None, None), ("9.9", 1, 1),
])
def test_bad_params(name, p, q):
    with pytest.raises(BadParams):
        fixture(name, p, q)


def test_params_from_q_alone():
    assert fixture("8.2", q=6).params == {"p": 5, "q": 6}
    assert fixture("8.3", q=5).params == {"p": 6, "q": 5}
