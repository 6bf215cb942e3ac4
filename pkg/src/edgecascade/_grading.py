"""Symbolic substitution of scaling maps into the unscaled operators."""
from __future__ import annotations

import sympy as sp

from . import opcatalog as oc
from .exactcore import PARAM_NAMES, to_fraction

y, n, a, p, w = sp.symbols("y n a p w", positive=True)
_A, _T = sp.symbols("A T")


def _op_to_sympy(op, subs: dict) -> dict[int, sp.Expr]:
    out = {}
    for k, poly in op.terms.items():
        expr = 0
        for m, c in poly.coeffs.items():
            for mono, q in c.terms():
                t = sp.Rational(to_fraction(q).numerator, to_fraction(q).denominator) * y ** m
                for name, e in zip(PARAM_NAMES, mono):
                    if e:
                        t *= subs[name] ** e
                expr += t
        out[k] = expr
    return out


def _raw_laguerre(x, M):
    """Coefficients of d_x^k of the unscaled Laguerre operator, M = a + 2N."""
    return {3: x ** 3, 2: 4 * x ** 2, 1: -(x ** 2 - 2 * M * x + a ** 2 - 2) * x, 0: M * x - a ** 2}


def _transform(raw: dict, sigma) -> dict:
    return {k: c / sigma ** k for k, c in raw.items()}


def _compare(raw_y: dict, graded: list[tuple[object, dict]], relation=None) -> list[str]:
    issues = []
    for k in range(4):
        expr = raw_y.get(k, 0) - sum(wt * ops.get(k, 0) for wt, ops in graded)
        num = sp.numer(sp.together(sp.expand(expr)))
        num = sp.expand(num)
        if relation is not None and num != 0:
            num = sp.expand(sp.rem(sp.Poly(num, w), sp.Poly(relation, w)).as_expr())
        if num != 0:
            issues.append(f"d^{k}: residual {sp.factor(num)}")
    return issues


def check(case: oc.EdgeCase) -> list[str]:
    ops = oc.get_operators(case).operators
    if case == oc.GUE_SOFT:
        # global form in x: (4N)^-2 d^3 - (x^2 - 1) d + x, with x = 1 + y/(2 N^(2/3)), N = n^3
        N = n ** 3
        x = 1 + y / (2 * n ** 2)
        raw = {3: sp.Rational(1, 16) / N ** 2, 1: -(x ** 2 - 1), 0: x}
        raw_y = _transform(raw, 1 / (2 * n ** 2))
        conv = [_op_to_sympy(op, {}) for op in ops]
        return _compare(raw_y, [(sp.Rational(1, 2), conv[0]), (sp.Rational(1, 2) / n ** 2, conv[1])])
    if case == oc.LUE_SOFT:
        # M = 2N' = m^3 with m = n
        M = n ** 3
        x = 2 * M + 2 * n * y
        raw_y = {k: c / M ** 2 for k, c in _transform(_raw_laguerre(x, M), 2 * n).items()}
        conv = [_op_to_sympy(op, {"A": a ** 2}) for op in ops]
        return _compare(raw_y, [(n ** (-2 * j), conv[j]) for j in range(4)])
    if case == oc.LUE_HARD:
        M = n ** 3
        x = y / (2 * M)
        raw_y = _transform(_raw_laguerre(x, M), 1 / (2 * M))
        conv = [_op_to_sympy(op, {"A": a ** 2}) for op in ops]
        return _compare(raw_y, [(1, conv[0]), (1 / (4 * M ** 2), conv[1])])
    if case in (oc.LUE_SOFT_RIGHT, oc.LUE_SOFT_LEFT):
        # sqrt(gamma) = p^3, N = n^3; w^3 = 1 + p^3 (right) or p^3 - 1 (left)
        s = p ** 3
        N = n ** 3
        right = case == oc.LUE_SOFT_RIGHT
        rel = w ** 3 - (1 + s) if right else w ** 3 - (s - 1)
        gamma = s ** 2
        M = (gamma + 1) * N
        aval = (gamma - 1) * N
        if right:
            x = (1 + s) ** 2 * N + w ** 4 * n * y / p
            sigma = w ** 4 * n / p
        else:
            x = (1 - s) ** 2 * N - w ** 4 * n * y / p
            sigma = -w ** 4 * n / p
        tau = 4 * s / w ** 6
        nhat13 = 2 * p ** 2 * n / w ** 2
        raw = _raw_laguerre(x, M)
        raw = {k: c.subs(a, aval) for k, c in raw.items()}
        raw_y = _transform(raw, sigma)
        conv = [_op_to_sympy(op, {"T": tau}) for op in ops]
        c0 = sp.together(raw_y[3].subs(y, 0) / nhat13 ** 6)
        graded = [(c0 * nhat13 ** (6 - 2 * j), conv[j]) for j in range(4)]
        return _compare(raw_y, graded, rel)
    raise oc.CatalogError(f"no unscaled operator catalogued for {case.key}")
