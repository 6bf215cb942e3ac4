"""Large-N operator expansion of 1F1(-N + shift; c; x/N) acting on 0F1(c; -x)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, prod


def _elem_sym(k: int, n: int) -> int:
    """e_k(1, 2, ..., n)."""
    e = [1] + [0] * k
    for v in range(1, n + 1):
        for i in range(min(k, v), 0, -1):
            e[i] += v * e[i - 1]
    return e[k]


def _forward_diffs(vals: list[int]) -> list[Fraction]:
    out = []
    row = [Fraction(v) for v in vals]
    while row:
        out.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    return out


@dataclass(frozen=True)
class HypergeomOpTable:
    shift: int
    order: int
    entries: dict[int, list[tuple[Fraction, int]]]

    def text(self) -> str:
        lines = []
        for k in range(self.order + 1):
            terms = " + ".join(f"({c})·D^{m}" if m else f"({c})" for c, m in self.entries[k])
            lines.append(f"N^-{k}: {terms or '0'}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"shift": self.shift, "order": self.order,
                "entries": {str(k): [[f"{c.numerator}/{c.denominator}", m] for c, m in v]
                            for k, v in sorted(self.entries.items())}}

    def evaluate(self, N, c, x, dps: int = 30):
        import mpmath
        with mpmath.workdps(dps + 10):
            x = mpmath.mpf(x)
            c = mpmath.mpf(c)
            tot = mpmath.mpf(0)
            for k, terms in self.entries.items():
                part = mpmath.mpf(0)
                for coef, m in terms:
                    dm = (-x) ** m * mpmath.hyp0f1(c + m, -x) / mpmath.rf(c, m)
                    part += mpmath.mpf(coef.numerator) / coef.denominator * dm
                tot += part / mpmath.mpf(N) ** k
            return +tot


def hypergeom_ops(shift: int, K: int) -> HypergeomOpTable:
    """Coefficients (-1)^k Σ_m c_{k,m} D^m of N^-k, D^m = x^m d^m/dx^m.

    The weight of x^p at N^-k is e_k(1..p-1) (shift 0) or e_k(1..p)
    (shift 1); being a polynomial of degree 2k in p it is expanded in
    falling factorials, which D^m reproduces.
    """
    if shift not in (0, 1):
        raise ValueError("shift must be 0 or 1")
    if K < 0:
        raise ValueError("order must be non-negative")
    entries = {}
    for k in range(K + 1):
        f = [_elem_sym(k, max(p - 1 + shift, 0)) for p in range(2 * k + 1)]
        diffs = _forward_diffs(f)
        terms = []
        for m in range(len(diffs) - 1, -1, -1):
            c = diffs[m] / factorial(m) * (-1) ** k
            if c:
                terms.append((c, m))
        # degree-2k interpolation must reproduce further values
        for p in range(2 * k + 1, 2 * k + 4):
            want = _elem_sym(k, max(p - 1 + shift, 0)) * (-1) ** k
            got = sum(c * prod(range(p - m + 1, p + 1)) for c, m in terms)
            if got != want:
                raise ArithmeticError("elementary symmetric weight is not polynomial of degree 2k")
        entries[k] = terms
    return HypergeomOpTable(shift, K, entries)


def brute_elem_sym(k: int, n: int) -> int:
    """Direct enumeration, for testing."""
    return sum(prod(c) for c in combinations(range(1, n + 1), k))
