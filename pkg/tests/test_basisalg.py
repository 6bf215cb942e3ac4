from fractions import Fraction

import mpmath
import pytest

from edgecascade import opcatalog as oc
from edgecascade.basisalg import (
    AIRY3, AIRY5, BESSEL3, BESSEL5, DiffOperator, FamilyMismatch, ModuleElement, OperatorNotEulerCompatible,
    apply_operator, differentiate, element, euler_normalize, eval_numeric, parse_operator, parse_poly, theta,
)
from edgecascade.numerics.special import basis_values

FAMILIES = [AIRY3, AIRY5.with_nu(0), AIRY5.with_nu(1), BESSEL3, BESSEL5.with_nu(0), BESSEL5.with_nu(1)]


def _deriv_numeric(fam, i, y, a):
    def f(t):
        v = basis_values(fam, t, a=a, nu=fam.nu)[i]
        return t * v if fam.kind == "bessel" else v
    return mpmath.diff(f, y)


@pytest.mark.parametrize("fam", FAMILIES, ids=lambda f: f"{f.id}-nu{f.nu}")
def test_closure_rules_match_numeric_derivatives(fam):
    mpmath.mp.dps = 30
    a = mpmath.mpf("1.5") if fam.kind == "bessel" else None
    y = mpmath.mpf("0.7") if fam.kind == "airy" else mpmath.mpf("2.3")
    for i in range(fam.size):
        d = differentiate(ModuleElement.basis(fam, i))
        got = eval_numeric(d, y, a=a, dps=30)
        want = _deriv_numeric(fam, i, y, a)
        assert abs(got - want) < mpmath.mpf(10) ** -20 * max(1, abs(want))


def test_gue_leading_operator_on_basis():
    d0 = oc.cascade_operators(oc.GUE_SOFT)[0]
    assert apply_operator(d0, ModuleElement.basis(AIRY3, 0)) == element(AIRY3, "4")
    assert apply_operator(d0, ModuleElement.basis(AIRY3, 2)) == element(AIRY3, "0", "0", "8")


def test_theta_is_y_times_derivative():
    e = element(AIRY3, "y**2", "1", "y")
    assert theta(e) == ModuleElement(AIRY3, [c.shift(1) for c in differentiate(e).coeffs])
    b = element(BESSEL3, "y", "0", "1")
    assert theta(b) == differentiate(b) - b


def test_euler_normalize():
    # y²d² = θ² - θ, so y²d² + yd = θ²
    op = euler_normalize(parse_operator("y**2*d**2 + y*d"))
    assert op.form == "theta"
    assert op == DiffOperator({2: parse_poly("1")}, "theta")
    op = euler_normalize(parse_operator("y**3*d**3"))
    assert op == DiffOperator({3: parse_poly("1"), 2: parse_poly("-3"), 1: parse_poly("2")}, "theta")
    with pytest.raises(OperatorNotEulerCompatible):
        euler_normalize(parse_operator("d"))


def test_euler_and_plain_application_agree_numerically():
    op = parse_operator("y**2*d**2 - 3*y*d + 2")
    e = element(BESSEL3, "y", "1", "0")
    got = eval_numeric(apply_operator(op, e), 2, a=1, dps=30)

    def f(t):
        # follow mpmath.diff's raised working precision
        return eval_numeric(e, t, a=1, dps=mpmath.mp.dps)
    with mpmath.workdps(30):
        y = mpmath.mpf(2)
        want = y ** 2 * mpmath.diff(f, y, 2) - 3 * y * mpmath.diff(f, y) + 2 * f(y)
    assert abs(got - want) < mpmath.mpf(10) ** -18


def test_eval_numeric_known_values():
    with mpmath.workdps(30):
        want = mpmath.airyai(0, derivative=1) ** 2
    assert abs(eval_numeric(ModuleElement.basis(AIRY3, 1), 0) - want) < mpmath.mpf(10) ** -25
    r0 = element(BESSEL3, "(y - A)/4", "1/4", "0")
    with mpmath.workdps(30):
        want = (mpmath.besselj(0, 1) ** 2 + mpmath.besselj(1, 1) ** 2) / 4
    assert abs(eval_numeric(r0, 1, a=0) - want) < mpmath.mpf(10) ** -25


def test_family_checks():
    with pytest.raises(FamilyMismatch):
        element(AIRY3, "1") + element(BESSEL3, "1")
    with pytest.raises(FamilyMismatch):
        ModuleElement(AIRY3, [parse_operator("1").coeff(0)] * 4)


def test_json_roundtrip_and_equality():
    e = element(AIRY5.with_nu(1), "y", "A", "0", "3/7*y**2", "-1")
    assert ModuleElement.from_json(e.to_json()) == e
    assert e.scale(Fraction(0)).is_zero()


def test_aitilde_substitution_on_bessel():
    op = parse_operator("Ã*y*d")
    e = element(BESSEL3, "1")
    assert apply_operator(op, e) == apply_operator(parse_operator("(A - 1)*y*d"), e)
