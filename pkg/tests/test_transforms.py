import time
from fractions import Fraction

import mpmath
import pytest

from edgecascade import opcatalog as oc
from edgecascade.basisalg import AIRY3, AIRY5, ModuleElement, differentiate, element
from edgecascade.cascade import get_table
from edgecascade.numerics.special import basis_values
from edgecascade.transforms import laplace as lp
from edgecascade.transforms.hypergeom import brute_elem_sym, hypergeom_ops, _elem_sym
from edgecascade.transforms.saddle import constant_b, saddle_expand


@pytest.fixture(scope="module")
def saddle9():
    return saddle_expand(9)


# --- Laplace side --------------------------------------------------------------

# a1..a3 do not depend on the nu tag
@pytest.mark.parametrize("i,nu", [(0, 0), (1, 0), (2, 0), (3, 0), (4, 0), (3, 1), (4, 1)])
def test_basis_transforms_match_quadrature(i, nu):
    fam = AIRY5.with_nu(nu)
    with mpmath.workdps(20):
        g = mpmath.mpf("1.5")
        q = mpmath.quad(lambda y: mpmath.exp(g * y) * basis_values(fam, y, nu=nu)[i], [-30, -10, 0, 10, 25])
        assert abs(lp.transform_basis(i, nu).evaluate(g) - q) < mpmath.mpf(10) ** -15


@pytest.mark.parametrize("j", [0, 1, 2])
def test_gue_rows_transform_to_closed_forms(j):
    assert lp.transform_element(get_table(oc.GUE_SOFT)[j]) == lp.u_gue(j)


@pytest.mark.parametrize("case,nu", [(oc.GOE_SOFT, 1), (oc.GSE_SOFT, 0)], ids=["goe", "gse"])
@pytest.mark.parametrize("j", [0, 1, 2])
def test_beta_rows_transform_to_closed_forms(case, nu, j):
    assert lp.transform_element(get_table(case)[j], nu) == lp.u_beta(j, nu)


@pytest.mark.parametrize("elem", [
    element(AIRY3, "y**2 - 3", "2*y", "1/7"),
    element(AIRY5.with_nu(1), "y", "0", "1", "y**2", "-2"),
    element(AIRY5.with_nu(0), "1", "y", "0", "3", "y"),
], ids=["airy3", "airy5-nu1", "airy5-nu0"])
def test_transform_of_derivative_is_minus_gamma_times_transform(elem):
    lhs = lp.transform_element(differentiate(elem))
    rhs = lp.transform_element(elem).shift(1).scale(-1)
    assert lhs == rhs


def test_transform_rejects_parameters_and_bessel():
    with pytest.raises(ValueError):
        lp.transform_element(element(AIRY3, "A"))
    from edgecascade.basisalg import BESSEL3
    with pytest.raises(ValueError):
        lp.transform_element(ModuleElement.basis(BESSEL3, 0))


def test_laplace_operator_of_gue_leading_operator():
    ops = oc.cascade_operators(oc.GUE_SOFT)
    assert lp.laplace_operator(ops[0]) == lp.parse_laplace(lp.GUE_L0)
    u0 = lp.u_gue(0)
    assert lp.laplace_operator(ops[0]).apply(u0).is_zero()
    assert lp.parse_laplace(lp.GUE_L0).apply(u0).is_zero()


def test_laplace_form_of_first_relation():
    op = lp.parse_laplace("-(3*g**2/10) - (g/5)*d**2")
    assert op.apply(lp.u_gue(0)) == lp.u_gue(1)


def test_recursion_reproduces_first_two_orders():
    u = {0: lp.u_gue(0)}
    for j in (1, 2):
        r = lp.recursion_step(2, u, j)
        assert r.free_parameters == 0
        assert r.particular == lp.u_gue(j)
        u[j] = r.particular


def test_recursion_third_and_fourth_orders(saddle9):
    u = {j: lp.u_gue(j) for j in range(3)}
    r = lp.recursion_step(2, u, 3)
    assert r.free_parameters == 1
    assert r.homogeneous == [lp.u_gue(0).scale(2)]
    b = constant_b(saddle9)
    u3 = r.particular + lp.u_gue(0).scale(-128 * b)
    assert u3 == lp.u_gue3(b)
    # the shape with one free constant
    assert set(u3.A) == {Fraction(-9, 2) + 3 * l for l in range(7)} and not u3.B and not u3.C
    assert u3 != lp.u_gue3(b, third=lp.U3_PRINTED_THIRD)
    u[3] = u3
    r4 = lp.recursion_step(2, u, 4)
    assert r4.free_parameters == 0
    assert r4.particular == lp.u_gue4()


@pytest.mark.parametrize("nu", [0, 1])
def test_beta_closed_forms_satisfy_recursion(nu):
    Ls = [lp.parse_laplace(t) for t in lp.GBETA_L]
    u = {j: lp.u_beta(j, nu) for j in range(3)}
    for j in range(3):
        tot = Ls[0].apply(u[j])
        for k in (1, 2):
            if j - k >= 0:
                tot = tot + Ls[k].apply(u[j - k])
        assert tot.is_zero(), (nu, j)


def test_fundamental_solutions_are_homogeneous():
    L0 = lp.parse_laplace(lp.GBETA_L[0])
    for h in lp.fundamental_solutions():
        assert L0.apply(h).is_zero()


def test_transform_element_json():
    data = lp.u_gue(1).to_json()
    assert data["A"][0] == ["-5/2", "-3/8"]


# --- saddle engine -------------------------------------------------------------------

def test_saddle_odd_orders_vanish(saddle9):
    for k in (1, 3, 5, 7, 9):
        assert saddle9[k].is_zero()


def test_saddle_matches_recursion_with_grading(saddle9):
    for j in range(3):
        assert saddle9[2 * j] == lp.u_gue(j).scale(Fraction(1, 4 ** j))
    assert saddle9[6] == lp.u_gue3().scale(Fraction(1, 64))
    assert saddle9[8] == lp.u_gue4().scale(Fraction(1, 256))


def test_saddle_constant_b(saddle9):
    assert constant_b(saddle9) == Fraction(-35, 16384)
    with pytest.raises(ValueError):
        constant_b(saddle9[:6])


def test_saddle_runtime():
    t0 = time.perf_counter()
    saddle_expand(9)
    assert time.perf_counter() - t0 < 60


def test_saddle_numeric_against_integral():
    # the N^0 coefficient is the transform of r0 = Ai'^2 - y Ai^2
    with mpmath.workdps(25):
        g = mpmath.mpf("1.3")

        def r0(y):
            return mpmath.airyai(y, derivative=1) ** 2 - y * mpmath.airyai(y) ** 2
        q = mpmath.quad(lambda y: mpmath.exp(g * y) * r0(y), [-60, -10, 0, 10, 30])
        assert abs(saddle_expand(0)[0].evaluate(g) - q) < mpmath.mpf(10) ** -18


# --- hypergeometric operators ----------------------------------------------------------

def test_elementary_symmetric_sums():
    for k in range(5):
        for n in range(9):
            assert _elem_sym(k, n) == brute_elem_sym(k, n)


def _table(shift):
    return {k: {m: c for c, m in v} for k, v in hypergeom_ops(shift, 4).entries.items()}


def test_hypergeom_shift0_coefficients():
    F = Fraction
    assert _table(0) == {
        0: {0: F(1)},
        1: {2: F(-1, 2)},
        2: {4: F(1, 8), 3: F(1, 3)},
        3: {6: F(-1, 48), 5: F(-1, 6), 4: F(-1, 4)},
        4: {8: F(1, 384), 7: F(1, 24), 6: F(13, 72), 5: F(1, 5)},
    }


def test_hypergeom_shift1_coefficients():
    F = Fraction
    assert _table(1) == {
        0: {0: F(1)},
        1: {2: F(-1, 2), 1: F(-1)},
        2: {4: F(1, 8), 3: F(5, 6), 2: F(1)},
        3: {6: F(-1, 48), 5: F(-7, 24), 4: F(-13, 12), 3: F(-1)},
        4: {8: F(1, 384), 7: F(1, 16), 6: F(17, 36), 5: F(77, 60), 4: F(1)},
    }


@pytest.mark.parametrize("a", [0, 1])
@pytest.mark.parametrize("x", [1, 4])
@pytest.mark.parametrize("shift", [0, 1])
def test_hypergeom_numeric(a, x, shift):
    N = 100
    t = hypergeom_ops(shift, 4)
    with mpmath.workdps(40):
        exact = mpmath.hyp1f1(-N + shift, a + 1, mpmath.mpf(x) / N)
        approx = t.evaluate(N, a + 1, x, dps=40)
        assert abs(approx - exact) <= 10 * mpmath.mpf(N) ** -5 * abs(exact)


def test_hypergeom_errors_and_text():
    with pytest.raises(ValueError):
        hypergeom_ops(2, 1)
    with pytest.raises(ValueError):
        hypergeom_ops(0, -1)
    assert hypergeom_ops(0, 1).text() == "N^-0: (1)\nN^-1: (-1/2)·D^2"
