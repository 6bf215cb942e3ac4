"""Finite-N densities of the GUE (weight e^(-x²)) and LUE (weight x^a e^(-x))."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import mpmath

from ..exactcore import ParamPoly, const, to_fraction
from .precision import PrecisionContext, PrecisionShortfall, default_context

EXACT_MAX_N = 8


def _kind(case) -> str:
    if case.ensemble == "GAUSSIAN" and case.beta == 2:
        return "gue"
    if case.ensemble == "LAGUERRE" and case.beta == 2:
        return "lue"
    raise ValueError(f"no finite-N density for {case.key}")


def _gue(N: int, x):
    p_prev = mpmath.mpf(0)
    p = mpmath.pi ** (-mpmath.mpf(1) / 4) * mpmath.exp(-x * x / 2)
    total = p * p
    for k in range(N - 1):
        p, p_prev = mpmath.sqrt(mpmath.mpf(2) / (k + 1)) * x * p - mpmath.sqrt(mpmath.mpf(k) / (k + 1)) * p_prev, p
        total += p * p
    return total


def _lue(N: int, a, x):
    if x <= 0:
        return mpmath.mpf(0)
    # orthonormal Laguerre polynomials times sqrt(w), normalised through lgamma
    log_w = a * mpmath.log(x) - x - mpmath.loggamma(a + 1)
    p_prev = mpmath.mpf(0)
    p = mpmath.exp(log_w / 2)
    total = p * p
    for k in range(N - 1):
        nxt = ((2 * k + a + 1 - x) * p - mpmath.sqrt(k * (k + a)) * p_prev) / mpmath.sqrt((k + 1) * (k + a + 1))
        p_prev, p = p, nxt
        total += p * p
    return total


def _raw(kind: str, N: int, a, x):
    return _gue(N, x) if kind == "gue" else _lue(N, a, x)


def finite_n_density(case, N: int, x, a=0, ctx: PrecisionContext | None = None, check: bool = True):
    """Density at x, optionally certified by a second run with 12 more digits."""
    if N < 1:
        raise ValueError("N must be positive")
    kind = _kind(case)
    ctx = ctx or default_context(N)
    with mpmath.workdps(ctx.working_digits):
        val = _raw(kind, N, mpmath.mpf(a), mpmath.mpf(x))
    if not check:
        return val
    with mpmath.workdps(ctx.working_digits + 12):
        ref = _raw(kind, N, mpmath.mpf(a), mpmath.mpf(x))
    err = abs(val - ref)
    if err > abs(ref) * mpmath.mpf(10) ** (-ctx.target) and err > mpmath.mpf(10) ** (-ctx.target - 20):
        raise PrecisionShortfall(f"only ~{float(-mpmath.log10(err / abs(ref))):.1f} digits at N={N}, x={x}; "
                                 f"raise working digits above {ctx.working_digits}")
    return val


def christoffel_darboux_density(N: int, a, x, dps: int = 40):
    """LUE density from the confluent Christoffel–Darboux form with mpmath's Laguerre functions."""
    with mpmath.workdps(dps):
        a = mpmath.mpf(a)
        x = mpmath.mpf(x)

        def p(n):
            return mpmath.laguerre(n, a, x) * mpmath.sqrt(mpmath.factorial(n) / mpmath.gamma(n + a + 1))

        def dp(n):
            if n == 0:
                return mpmath.mpf(0)
            return -mpmath.laguerre(n - 1, a + 1, x) * mpmath.sqrt(mpmath.factorial(n) / mpmath.gamma(n + a + 1))

        coef = -mpmath.sqrt(N * (N + a))
        w = x ** a * mpmath.exp(-x)
        return +(coef * (dp(N) * p(N - 1) - dp(N - 1) * p(N)) * w)


# --- exact small-N densities -----------------------------------------------------

# w'/w for each weight tag, as a polynomial in x
PEARSON = {"exp(-x^2)": {1: -2}, "exp(-x)": {0: -1}}


@dataclass(frozen=True)
class ExactDensity:
    """density = prefactor_tag · poly(x) · weight; x^a is kept in the polynomial."""

    kind: str
    N: int
    a: int
    poly: ParamPoly
    weight: str
    prefactor: str

    def evaluate(self, x, dps: int = 40):
        with mpmath.workdps(dps):
            x = mpmath.mpf(x)
            v = sum(mpmath.mpf(to_fraction(c.LC).numerator) / to_fraction(c.LC).denominator * x ** e
                    for e, c in self.poly.coeffs.items())
            w = mpmath.exp(-x * x) if self.weight == "exp(-x^2)" else mpmath.exp(-x)
            pre = 1 / mpmath.sqrt(mpmath.pi) if self.prefactor == "1/sqrt(pi)" else mpmath.mpf(1)
            return +(v * w * pre)

    def total_mass(self) -> Fraction:
        """∫ density, from exact moments of the weight."""
        tot = Fraction(0)
        for e, c in self.poly.coeffs.items():
            c = to_fraction(c.LC)
            if self.weight == "exp(-x)":
                tot += c * factorial(e)
            elif e % 2 == 0:
                # ∫ x^e e^(-x²) dx / √π = (e-1)!!/2^(e/2)
                dbl = 1
                for t in range(e - 1, 0, -2):
                    dbl *= t
                tot += c * Fraction(dbl, 2 ** (e // 2))
        return tot

    def derivative_factor(self) -> ParamPoly:
        return ParamPoly("x", PEARSON[self.weight])


def _hermite_polys(n: int) -> list[ParamPoly]:
    x = ParamPoly.monomial(1, 1, "x")
    H = [ParamPoly.constant(1, "x"), x * 2]
    for k in range(1, n):
        H.append(x * H[k] * 2 - H[k - 1] * (2 * k))
    return H[: n + 1]


def _laguerre_polys(n: int, a: int) -> list[ParamPoly]:
    x = ParamPoly.monomial(1, 1, "x")
    L = [ParamPoly.constant(1, "x"), ParamPoly("x", {0: 1 + a, 1: -1})]
    for k in range(1, n):
        nxt = (ParamPoly("x", {0: 2 * k + 1 + a, 1: -1}) * L[k] - L[k - 1] * (k + a)) * const(Fraction(1, k + 1))
        L.append(nxt)
    return L[: n + 1]


def exact_density(case, N: int, a: int = 0) -> ExactDensity:
    kind = _kind(case)
    if not 1 <= N <= EXACT_MAX_N:
        raise ValueError(f"exact densities are limited to 1 <= N <= {EXACT_MAX_N}")
    if kind == "gue":
        H = _hermite_polys(N)
        poly = ParamPoly("x")
        for k in range(N):
            poly = poly + H[k] * H[k] * const(Fraction(1, 2 ** k * factorial(k)))
        return ExactDensity(kind, N, 0, poly, "exp(-x^2)", "1/sqrt(pi)")
    if int(a) != a or a < 0:
        raise ValueError("exact LUE densities need a non-negative integer a")
    L = _laguerre_polys(N, a)
    poly = ParamPoly("x")
    for k in range(N):
        poly = poly + L[k] * L[k] * const(Fraction(factorial(k), factorial(k + a)))
    return ExactDensity(kind, N, a, poly.shift(a), "exp(-x)", "1")


def _weighted_derivative(p: ParamPoly, m: ParamPoly) -> ParamPoly:
    return p.derivative() + p * m


def raw_operator(kind: str, N: int, a: int = 0) -> dict[int, ParamPoly]:
    """Unscaled third-order operator coefficients {order: poly in x}."""
    if kind == "gue":
        return {3: ParamPoly("x", {0: Fraction(1, 4)}), 1: ParamPoly("x", {2: -1, 0: 2 * N}),
                0: ParamPoly("x", {1: 1})}
    M = a + 2 * N
    return {3: ParamPoly("x", {3: 1}), 2: ParamPoly("x", {2: 4}),
            1: ParamPoly("x", {3: -1, 2: 2 * M, 1: 2 - a * a}), 0: ParamPoly("x", {1: M, 0: -a * a})}


def verify_finite_ode(case, N: int, a: int = 0, density: ExactDensity | None = None) -> ParamPoly:
    """Polynomial part of the operator applied to the exact density (zero when it holds)."""
    dens = density or exact_density(case, N, a)
    m = dens.derivative_factor()
    ops = raw_operator(dens.kind, N, a)
    derivs = [dens.poly]
    for _ in range(3):
        derivs.append(_weighted_derivative(derivs[-1], m))
    out = ParamPoly("x")
    for k, c in ops.items():
        out = out + c * derivs[k]
    return out
