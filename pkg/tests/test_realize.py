import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from rank2curv.curvature import CurvatureTensor4, make_R_phi
from rank2curv.errors import (
    DegeneratePoint,
    DimensionMismatch,
    InputError,
    NotRankTwo,
    NotSelfAdjoint,
)
from rank2curv.exactlin import (
    LinearMap,
    Q,
    SignatureSpace,
    basis_vector,
    identity,
    inverse,
    is_zero,
    kernel_basis,
    qarray,
    zeros,
)
from rank2curv.fixtures import fixture, plus
from rank2curv.realize import (
    embed,
    first_fundamental_form,
    germ_radius,
    gauss_curvature_tensor,
    metric_second_derivatives,
    metric_second_derivatives_fd,
    near_origin_points,
    normal,
    origin_curvature_from_metric,
    pullback_metric,
    second_fundamental_form,
    shape_operator_origin,
    verify_realization,
)
from rank2curv.reconstruct import rational_sqrt
from rank2curv.sampling import random_admissible_phi, stream

SIGS = [(0, 5, 0), (1, 5, 1), (2, 6, 0), (2, 7, 2)]


def rational_point(dim, seed, bound=3, den=4):
    gen = stream(seed, "test-point", dim)
    return qarray([f"{k}/{den}" for k in gen.integers(-bound * den, bound * den + 1, size=dim)])


def sympy_pullback(phi, eps, y):
    """Differentiate F(y) = y + 1/2 <phi y, y> e symbolically, then evaluate."""
    m = phi.domain.dim
    ys = sympy.symbols(f"y0:{m}")
    G = sympy.Matrix(phi.domain.gram.tolist()).applyfunc(lambda x: sympy.Rational(str(x)))
    P = G * sympy.Matrix(phi.matrix.tolist()).applyfunc(lambda x: sympy.Rational(str(x)))
    Y = sympy.Matrix(ys)
    F = list(ys) + [sympy.Rational(1, 2) * (Y.T * P * Y)[0, 0]]
    J = sympy.Matrix(F).jacobian(ys)
    GW = sympy.diag(G, eps)
    g = J.T * GW * J
    sub = {s: sympy.Rational(str(v)) for s, v in zip(ys, y)}
    return [[g[i, j].subs(sub) for j in range(m)] for i in range(m)]


def to_rationals(m):
    return [[sympy.Rational(str(x)) for x in row] for row in m]


# -- embed ------------------------------------------------------------------------

def test_embed_examples():
    V = SignatureSpace.standard(0, 5)
    flat = embed(LinearMap.endo(V, zeros(5, 5)), 1)
    y = qarray([1, 2, 3, 4, 5])
    assert flat.point(y).tolist() == [1, 2, 3, 4, 5, 0]
    imm = embed(LinearMap.endo(V, identity(5)), 1)
    assert imm.point(basis_vector(5, 0)).tolist() == [1, 0, 0, 0, 0, Q("1/2")]
    phi = fixture("8.2", p=4).payload
    e1p = basis_vector(9, plus(4, 1))
    pt = embed(phi, 1).point(e1p)
    assert pt[:9].tolist() == e1p.tolist() and pt[9] == Q("1/2")


def test_embed_errors():
    V = SignatureSpace.standard(1, 4)
    m = identity(5)
    m[0, 1] = 1
    with pytest.raises(NotSelfAdjoint):
        embed(LinearMap.endo(V, m), 1)
    with pytest.raises(DimensionMismatch):
        embed(LinearMap(V, SignatureSpace.standard(0, 5), identity(5)), 1)
    with pytest.raises(InputError):
        embed(LinearMap.endo(V, identity(5)), 0)


def test_ambient_block_form():
    imm = embed(fixture("8.3", p=6).payload, -1)
    g = imm.ambient.gram
    assert g[:11, :11].tolist() == imm.space.gram.tolist()
    assert g[11, 11] == -1 and not any(g[11, :11]) and not any(g[:11, 11])


# -- first fundamental form ------------------------------------------------------

def test_metric_at_origin_is_gram():
    phi = fixture("8.2", p=4).payload
    for eps in (1, -1):
        assert first_fundamental_form(embed(phi, eps), zeros(9)).tolist() == phi.domain.gram.tolist()


def test_metric_for_identity_along_an_axis():
    V = SignatureSpace.standard(0, 5)
    imm = embed(LinearMap.endo(V, identity(5)), 1)
    t = Q("3/7")
    y = t * basis_vector(5, 0) + basis_vector(5, 2)
    g = first_fundamental_form(imm, y)
    # g = I + y y^T when phi = id and eps = +1
    assert g[0, 0] == 1 + t * t and g[0, 2] == t and g[2, 2] == 2 and g[1, 1] == 1


def test_metric_of_8_2_matches_symbolic_differentiation():
    phi = fixture("8.2", p=4).payload
    y = basis_vector(9, plus(4, 1)) / 2
    g = first_fundamental_form(embed(phi, 1), y)
    assert to_rationals(g) == sympy_pullback(phi, 1, y)


@pytest.mark.parametrize("sig", SIGS[:3])
@pytest.mark.parametrize("eps", [1, -1])
def test_closed_form_equals_pullback(sig, eps):
    phi = random_admissible_phi(*sig, seed=1)
    imm = embed(phi, eps)
    for k in range(20):
        y = rational_point(phi.domain.dim, k)
        assert is_zero(first_fundamental_form(imm, y) - pullback_metric(imm, y))
    y = rational_point(phi.domain.dim, 99)
    assert to_rationals(first_fundamental_form(imm, y)) == sympy_pullback(phi, eps, y)


# -- curvature at the origin ---------------------------------------------------------

def test_identity_gives_constant_curvature():
    V = SignatureSpace.standard(0, 5)
    phi = LinearMap.endo(V, identity(5))
    R = gauss_curvature_tensor(embed(phi, 1), zeros(5))
    assert R == make_R_phi(phi)
    e = [basis_vector(5, i) for i in range(5)]
    # R(x, y, y, x) = <x, x><y, y> - <x, y>^2 for orthonormal x, y
    assert R(e[0], e[1], e[1], e[0]) == 1


@pytest.mark.parametrize("sig", SIGS)
@pytest.mark.parametrize("seed", range(3))
def test_gauss_and_christoffel_routes_at_origin(sig, seed):
    phi = random_admissible_phi(*sig, seed=seed)
    Rphi = make_R_phi(phi)
    for eps in (1, -1):
        imm = embed(phi, eps)
        R0 = gauss_curvature_tensor(imm, zeros(imm.dim))
        assert R0 == Rphi.scaled(eps)
        assert origin_curvature_from_metric(imm) == R0


def test_sign_law_under_flipping_epsilon():
    phi = fixture("8.2", p=4).payload
    a = gauss_curvature_tensor(embed(phi, 1), zeros(9))
    b = gauss_curvature_tensor(embed(phi, -1), zeros(9))
    assert a == make_R_phi(phi) and b == -a


def test_fixture_8_2_at_origin():
    phi = fixture("8.2", p=4).payload
    assert gauss_curvature_tensor(embed(phi, 1), zeros(9)) == make_R_phi(phi)


@pytest.mark.parametrize("sig", [(0, 5, 0), (1, 5, 1)])
def test_metric_derivatives_by_coefficients_and_differences(sig):
    imm = embed(random_admissible_phi(*sig, seed=2), -1)
    assert is_zero(metric_second_derivatives(imm) - metric_second_derivatives_fd(imm))


def test_scaled_ambient_weight():
    phi = random_admissible_phi(1, 5, 0, seed=3)
    imm = embed(phi, -1, scale=2)
    assert imm.normal_weight == -2
    assert gauss_curvature_tensor(imm, zeros(6)) == make_R_phi(phi).scaled(-2)
    assert origin_curvature_from_metric(imm) == make_R_phi(phi).scaled(-2)


# -- away from the origin ----------------------------------------------------------

def test_rank_one_phi_is_flat_everywhere():
    V = SignatureSpace.standard(1, 5)
    v = qarray([1, 2, 0, -1, 3, 1])
    phi = LinearMap.endo(V, np.outer(v, V.gram @ v))
    imm = embed(phi, 1)
    for k in range(5):
        y = rational_point(6, k, bound=1, den=8)
        R = gauss_curvature_tensor(imm, y)
        assert is_zero(R.components)


def test_normal_at_origin_has_norm_epsilon():
    phi = random_admissible_phi(2, 6, 1, seed=0)
    for eps in (1, -1):
        imm = embed(phi, eps)
        _, nn = second_fundamental_form(imm, zeros(8))
        assert nn == eps
        assert normal(imm, zeros(8)).tolist() == [0] * 8 + [1]


def test_shape_operator_origin():
    V = SignatureSpace.standard(0, 5)
    phi = LinearMap.endo(V, identity(5))
    assert shape_operator_origin(embed(phi, -1)) == -phi
    zero = LinearMap.endo(V, zeros(5, 5))
    assert shape_operator_origin(embed(zero, 1)) == zero
    phi83 = fixture("8.3", p=6).payload
    assert shape_operator_origin(embed(phi83, 1)) == phi83
    # G^-1 L(0) is the same operator
    phi = random_admissible_phi(1, 5, 1, seed=4)
    for eps in (1, -1):
        imm = embed(phi, eps)
        L, _ = second_fundamental_form(imm, zeros(6))
        assert is_zero(inverse(imm.space.gram) @ L - shape_operator_origin(imm).matrix)


@given(st.integers(0, 10**6), st.sampled_from([1, -1]))
def test_kernel_directions_stay_flat(seed, eps):
    phi = random_admissible_phi(1, 5, 1, seed=5)
    imm = embed(phi, eps)
    (k,) = kernel_basis(phi.matrix).vectors()
    (y,) = near_origin_points(6, seed, 1)
    L, _ = second_fundamental_form(imm, y)
    assert is_zero(L @ k)


def test_degenerate_point():
    V = SignatureSpace.standard(0, 5)
    imm = embed(LinearMap.endo(V, identity(5)), -1)
    with pytest.raises(DegeneratePoint):
        gauss_curvature_tensor(imm, basis_vector(5, 0))


def test_near_origin_points_are_small_and_reproducible():
    pts = near_origin_points(6, 3, 10)
    assert all(max(abs(x) for x in p) <= Q("1/8") and any(p) for p in pts)
    assert [p.tolist() for p in pts] == [p.tolist() for p in near_origin_points(6, 3, 10)]


@pytest.mark.parametrize("sig", [(2, 6, 0), (1, 5, 1)])
@pytest.mark.parametrize("scale", [1, 72])
def test_germ_radius_keeps_the_signature(sig, scale):
    for seed in range(4):
        phi = random_admissible_phi(*sig, seed=seed)
        imm = embed(phi, -1, scale)
        r = germ_radius(imm)
        assert r <= Q("1/8")
        for y in near_origin_points(imm.dim, seed, 5, r):
            g = SignatureSpace.from_gram(first_fundamental_form(imm, y))
            assert (g.p, g.q) == (phi.domain.p, phi.domain.q)


# -- verify_realization -----------------------------------------------------------

def test_realize_identity():
    V = SignatureSpace.standard(0, 5)
    phi = LinearMap.endo(V, identity(5))
    rep = verify_realization(make_R_phi(phi), points=3, planes=5)
    assert rep.ok and rep.epsilon == 1 and rep.phi == phi and rep.scale == 1


def test_realize_fixture_8_2():
    phi = fixture("8.2", p=4).payload
    rep = verify_realization(make_R_phi(phi), points=10, planes=20)
    assert rep.ok and rep.origin_exact and rep.christoffel_exact
    assert len(rep.rank_samples) == 10
    assert all(s["ranks"] == [2] for s in rep.rank_samples)


def test_realize_negative_and_irrational_scales():
    phi = random_admissible_phi(1, 5, 0, seed=6)
    rep = verify_realization(make_R_phi(phi).scaled(-4), points=2, planes=4)
    assert rep.ok and rep.epsilon == -1 and rep.scale == 1
    assert rep.phi in (phi.scaled(2), phi.scaled(-2))
    R = make_R_phi(phi).scaled(2)
    rep = verify_realization(R, points=2, planes=4)
    # sqrt(2) is not rational, so the ambient weight keeps a non-square scale
    assert rep.ok and rep.epsilon == 1
    assert rational_sqrt(rep.scale) is None and rational_sqrt(rep.scale / 2) is not None
    assert make_R_phi(rep.phi).scaled(rep.scale) == R


def test_realize_rejects_non_rank_two():
    V = SignatureSpace.standard(0, 5)
    with pytest.raises(NotRankTwo):
        verify_realization(CurvatureTensor4(V, zeros(5, 5, 5, 5)))
    R = make_R_phi(random_admissible_phi(0, 5, 0, seed=1)) + make_R_phi(
        random_admissible_phi(0, 5, 0, seed=2))
    with pytest.raises(NotRankTwo):
        verify_realization(R)
