"""Saddle-point expansion of the soft-edge scaled GUE Laplace transform.

With ε = N^(-1/3), q = √γ and s = 1 + iεt/q, the Laguerre contour integral
has exponent -(t + iq³/2)² + γ³/12 + R(t, ε), where R = O(ε).  Expanding
e^R in ε, shifting t and integrating against e^(-t²) gives the ε^k
coefficient of the transform.  Imaginary parts must cancel exactly.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .laplace import TransformElement

# coefficients are Gaussian rationals stored as (re, im)
_Z = (Fraction(0), Fraction(0))


def _cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _ipow(n: int):
    return [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)),
            (Fraction(-1), Fraction(0)), (Fraction(0), Fraction(-1))][n % 4]


class SaddleConsistencyError(ArithmeticError):
    pass


# a polynomial in (t, q^±1) is a dict {(tpow, qpow): (re, im)}
Poly = dict


def _padd(out: Poly, k, v) -> None:
    cur = out.get(k, _Z)
    s = (cur[0] + v[0], cur[1] + v[1])
    if s[0] or s[1]:
        out[k] = s
    else:
        out.pop(k, None)


def _pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for (t1, q1), c1 in a.items():
        for (t2, q2), c2 in b.items():
            _padd(out, (t1 + t2, q1 + q2), _cmul(c1, c2))
    return out


@dataclass
class EpsSeries:
    """Truncated series Σ_{k ≤ order} ε^k c_k(t, q)."""

    order: int
    coeffs: dict[int, Poly]

    def __mul__(self, other: "EpsSeries") -> "EpsSeries":
        K = min(self.order, other.order)
        out: dict[int, Poly] = defaultdict(dict)
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                if i + j <= K:
                    for k, v in _pmul(a, b).items():
                        _padd(out[i + j], k, v)
        return EpsSeries(K, {k: v for k, v in out.items() if v})

    def scale(self, c: Fraction) -> "EpsSeries":
        return EpsSeries(self.order, {k: {m: (v[0] * c, v[1] * c) for m, v in p.items()} for k, p in self.coeffs.items()})

    def __add__(self, other: "EpsSeries") -> "EpsSeries":
        out: dict[int, Poly] = {k: dict(v) for k, v in self.coeffs.items()}
        for k, p in other.coeffs.items():
            d = out.setdefault(k, {})
            for m, v in p.items():
                _padd(d, m, v)
        return EpsSeries(min(self.order, other.order), {k: v for k, v in out.items() if v})


def exponent_series(K: int) -> EpsSeries:
    """R(t, ε) through ε^K."""
    acc: dict[int, Poly] = defaultdict(dict)
    # -t²/(1 + iδ) + t², δ = εt/q
    for n in range(1, K + 1):
        _padd(acc[n], (n + 2, -n), _cmul((Fraction(-1), Fraction(0)), _ipow(3 * n)))
    # (q⁴/2ε)((1 + iδ)^-2 - 1) + i q³ t
    for n in range(2, K + 2):
        c = _cmul((Fraction(n + 1, 2), Fraction(0)), _ipow(3 * n))
        _padd(acc[n - 1], (n, 4 - n), c)
    # Σ_{l≥3} γ^l ε^(l-3)/l (1 + iδ)^-l, minus γ³/3
    for l in range(3, K + 4):
        for n in range(0, K + 4 - l):
            if l == 3 and n == 0:
                continue
            c = Fraction((-1) ** n * comb(l + n - 1, n), l)
            _padd(acc[l - 3 + n], (n, 2 * l - n), _cmul((c, Fraction(0)), _ipow(n)))
    return EpsSeries(K, {k: v for k, v in acc.items() if v and 1 <= k <= K})


def exp_series(R: EpsSeries) -> EpsSeries:
    one = EpsSeries(R.order, {0: {(0, 0): (Fraction(1), Fraction(0))}})
    total = one
    power = one
    for m in range(1, R.order + 1):
        power = power * R
        total = total + power.scale(Fraction(1, factorial(m)))
    return total


def _shift_and_integrate(p: Poly) -> dict[int, Fraction]:
    """∫ p(t - iq³/2, q) e^(-t²) dt / √π, returned as {qpow: rational}."""
    out: dict[int, tuple] = {}
    shift_c = (Fraction(0), Fraction(-1, 2))  # -i/2, times q³
    for (n, qp), c in p.items():
        # (t + s)^n with s = -i q³/2
        spow = (Fraction(1), Fraction(0))
        for r in range(n + 1):
            tp = n - r
            if tp % 2 == 0:
                mom = Fraction(factorial(tp), factorial(tp // 2) * 4 ** (tp // 2))
                v = _cmul(c, spow)
                v = (v[0] * comb(n, r) * mom, v[1] * comb(n, r) * mom)
                key = qp + 3 * r
                cur = out.get(key, _Z)
                out[key] = (cur[0] + v[0], cur[1] + v[1])
            spow = _cmul(spow, shift_c)
    res = {}
    for k, (re, im) in out.items():
        if im:
            raise SaddleConsistencyError(f"imaginary part {im} survives at q^{k}")
        if re:
            res[k] = re
    return res


def saddle_expand(K: int) -> list[TransformElement]:
    """Coefficients of ε^k (k = 0..K) of the transform, ε = N^(-1/3)."""
    if K < 0:
        raise ValueError("order must be non-negative")
    series = exp_series(exponent_series(K)) if K else EpsSeries(0, {0: {(0, 0): (Fraction(1), Fraction(0))}})
    out = []
    for k in range(K + 1):
        coeffs = _shift_and_integrate(series.coeffs.get(k, {}))
        A = {}
        for qp, v in coeffs.items():
            if qp % 2:
                raise SaddleConsistencyError(f"odd power of √γ at order {k}")
            A[Fraction(qp - 3, 2)] = v / 2
        out.append(TransformElement(A))
    return out


def constant_b(terms: list[TransformElement]) -> Fraction:
    """The free constant of u_3, read from the ε⁶ coefficient."""
    if len(terms) < 7:
        raise ValueError("need the expansion through ε^6")
    return -terms[6].A.get(Fraction(-3, 2), Fraction(0))
