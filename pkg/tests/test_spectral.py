from fractions import Fraction

import pytest

from mixedhurwitz.errors import DomainError
from mixedhurwitz.ratfun import RF1, MultiPoly, Poly1, TensorSum
from mixedhurwitz.spectral import (
    OMEGA02,
    b_self_sigma,
    ceo_omega,
    closed_form_C,
    curve_dx,
    curve_x,
    curve_y,
    cut_and_join_C,
    extract_C,
    omega01,
    oracle_C,
    pole_structure,
    sigma_antisymmetry_defect,
    spectral_data,
)


def compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def test_spectral_data():
    x, y, kz, sigma = spectral_data()
    assert x.subs_reciprocal() == x          # x(1/z) = x(z)
    assert sigma == "reciprocal"
    dx = curve_dx()
    assert dx == RF1(Poly1([-1, 0, 1]), Poly1([0, 0, 1]))
    ydx = y * dx
    assert ydx == RF1(Poly1([1, 1]), Poly1([0, 1]) * Poly1([1, -2, 1]))


def test_bergman_difference_identity():
    # 1/(1-z1 z2)^2 == 1/(z1-z2)^2 - x'(z1)x'(z2)/(x(z1)-x(z2))^2, exactly,
    # via cross-multiplied multivariate polynomials
    x, dx = curve_x(), curve_dx()
    # build both sides as bivariate fractions with polynomial parts
    def up(poly, var):
        return MultiPoly.from_univariate(2, var, poly)

    one = MultiPoly.const(2, 1)
    z1z2 = MultiPoly(2, {(1, 1): 1})
    lhs_den = (one - z1z2) * (one - z1z2)
    diff = up(Poly1([0, 1]), 0) - up(Poly1([0, 1]), 1)
    dd = diff * diff
    # x(zi) = num_i/den_i
    xn1, xd1 = up(x.num, 0), up(x.den, 0)
    xn2, xd2 = up(x.num, 1), up(x.den, 1)
    dxn1, dxd1 = up(dx.num, 0), up(dx.den, 0)
    dxn2, dxd2 = up(dx.num, 1), up(dx.den, 1)
    xdiff = xn1 * xd2 - xn2 * xd1  # over xd1 xd2
    # lhs: 1/(1-z1z2)^2 ; rhs: 1/dd - (dxn1 dxn2 (xd1 xd2)^2) / (dxd1 dxd2 xdiff^2)
    # cross-multiplied identity:
    # dxd1*dxd2*xdiff^2 * (dd - lhs_den) == lhs_den * dd * dxn1*dxn2*(xd1*xd2)^2
    left = dxd1 * dxd2 * xdiff * xdiff * (lhs_den - dd)
    right = lhs_den * dd * dxn1 * dxn2 * xd1 * xd1 * xd2 * xd2
    assert (left - right).is_zero()


def test_extraction_from_initial_data():
    o1 = omega01()
    for m in range(1, 7):
        assert extract_C(o1, (m,)) == closed_form_C((0, 1), (m,))
    for m1 in range(1, 5):
        for m2 in range(1, 5):
            assert extract_C(OMEGA02, (m1, m2)) == closed_form_C((0, 2), (m1, m2))
    with pytest.raises(DomainError):
        extract_C(o1, (0,))


def test_omega03_closed_form():
    o3 = ceo_omega(0, 3)
    unit = RF1(Poly1([1]), Poly1([1, 1]) * Poly1([1, 1]))
    target = TensorSum(3)
    target.add_term(8, (unit, unit, unit))
    assert o3.equals(target)
    for mu in compositions(4, 3):
        assert extract_C(o3, mu) == closed_form_C((0, 3), mu)


def test_initial_data_errors():
    with pytest.raises(DomainError):
        ceo_omega(0, 2)
    with pytest.raises(DomainError):
        ceo_omega(0, 1)


def test_cut_and_join_values():
    assert cut_and_join_C(0, 1, (1,)) == 1
    assert cut_and_join_C(0, 2, (1, 1)) == 1
    assert cut_and_join_C(0, 2, (1, 2)) == -4
    assert cut_and_join_C(1, 1, (1,)) == 0
    assert cut_and_join_C(1, 1, (2,)) == -1
    for n in (1, 2, 3):
        for mu in compositions(4, n):
            level = (0, n)
            if n <= 3:
                assert cut_and_join_C(0, n, mu) == closed_form_C(level, mu)


def test_closed_form_examples():
    assert closed_form_C((0, 1), (3,)) == 2
    assert closed_form_C((0, 2), (1, 2)) == -4
    assert closed_form_C((0, 3), (1, 1, 2)) == -48


@pytest.mark.parametrize("g,n", [(0, 3), (0, 4), (1, 1), (1, 2)])
def test_recursion_vs_cutjoin_vs_oracle_light(g, n):
    om = ceo_omega(g, n)
    for tot in range(n, 5):
        for mu in compositions(tot, n):
            a = extract_C(om, mu)
            b = cut_and_join_C(g, n, mu)
            c = oracle_C(g, n, mu)
            assert a == b == c, (g, n, mu)


@pytest.mark.parametrize("g,n", [(0, 3), (0, 4), (1, 1), (1, 2), (2, 1)])
def test_antisymmetry_and_poles(g, n):
    om = ceo_omega(g, n)
    assert sigma_antisymmetry_defect(om).is_zero()
    for facs in pole_structure(om):
        assert facs["z"] == 0
        assert facs["z-1"] <= 1


def test_fa_structure():
    # f_0 = 2z^2/((z-1)(z+1)^3); f_a = (-d/dx x)^a f_0 is sigma-antiinvariant
    f0 = RF1(Poly1([0, 0, 2]),
             Poly1([-1, 1]) * Poly1([1, 1]) * Poly1([1, 1]) * Poly1([1, 1]))
    x = curve_x()
    dz_dx = RF1(Poly1([0, 0, -1]), Poly1([-1, 0, 1]))  # -z^2/(z^2-1)
    f = f0
    for a in range(4):
        assert (f + f.subs_reciprocal()).is_zero(), a
        f = dz_dx * (x * f).derivative()


def test_b_self_sigma():
    expect = RF1(Poly1([-1]),
                 Poly1([1, -2, 1]) * Poly1([1, 2, 1]))
    assert b_self_sigma() == expect
