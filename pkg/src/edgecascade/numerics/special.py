"""Airy and Bessel building blocks evaluated with mpmath.

``AI_nu(y) = nu - ∫_y^∞ Ai`` and ``JI_nu(u) = nu - ∫_0^u J_a``; the tag
``nu = 1`` gives the tail integral ``∫_u^∞ J_a`` because ``∫_0^∞ J_a = 1``.
"""
from __future__ import annotations

import mpmath


def airy_values(y):
    ai = mpmath.airyai(y)
    aip = mpmath.airyai(y, derivative=1)
    return ai, aip


def airy_integral(y, nu):
    # airyai(y, -1) = ∫_0^y Ai, and ∫_0^∞ Ai = 1/3
    return nu - mpmath.mpf(1) / 3 + mpmath.airyai(y, derivative=-1)


def bessel_integral0(a, u):
    """∫_0^u J_a(t) dt for a > -1."""
    a = mpmath.mpf(a)
    extra = int(2 * float(abs(u)) / 2.3) + 10
    with mpmath.extradps(extra):
        pre = (u / 2) ** (a + 1) * 2 / ((a + 1) * mpmath.gamma(a + 1))
        val = pre * mpmath.hyp1f2((a + 1) / 2, a + 1, (a + 3) / 2, -u * u / 4)
    return +val


def bessel_integral(a, u, nu):
    return nu - bessel_integral0(a, u)


def basis_values(family, y, a=None, nu=None) -> list:
    """Numeric values of every basis element of ``family`` at ``y``."""
    y = mpmath.mpf(y)
    if family.kind == "airy":
        ai, aip = airy_values(y)
        vals = [ai * ai, aip * aip, ai * aip]
        if family.size == 5:
            if nu is None:
                raise ValueError("AIRY5 needs a nu tag")
            big = airy_integral(y, nu)
            vals += [ai * big, aip * big]
        return vals
    if a is None:
        raise ValueError("Bessel families need the order a")
    u = mpmath.sqrt(y)
    j = mpmath.besselj(a, u)
    jp = mpmath.besselj(a, u, derivative=1)
    vals = [j * j / y, jp * jp, j * jp / u]
    if family.size == 5:
        if nu is None:
            raise ValueError("BESSEL5 needs a nu tag")
        big = bessel_integral(a, u, nu)
        vals += [j * big / u, jp * big]
    return vals


def special(fn: str, *args, dps: int = 40):
    """Dispatch by name: Ai, Ai', AI, J, J', JI, 0F1, 1F1, gamma, lgamma."""
    with mpmath.workdps(dps):
        args = [mpmath.mpf(x) if not isinstance(x, mpmath.mpc) else x for x in args]
        table = {
            "Ai": lambda y: mpmath.airyai(y),
            "Ai'": lambda y: mpmath.airyai(y, derivative=1),
            "AI": lambda nu, y: airy_integral(y, nu),
            "J": lambda a, u: mpmath.besselj(a, u),
            "J'": lambda a, u: mpmath.besselj(a, u, derivative=1),
            "JI": lambda nu, a, u: bessel_integral(a, u, nu),
            "0F1": lambda b, x: mpmath.hyp0f1(b, x),
            "1F1": lambda a, b, x: mpmath.hyp1f1(a, b, x),
            "gamma": mpmath.gamma,
            "lgamma": mpmath.loggamma,
        }
        return +table[fn](*args)
