"""Finitely generated modules over Q[params][y] spanned by products of
Airy or Bessel functions, closed under a derivation.

Two derivations occur.  Airy families use plain ``d/dy``.  Bessel families
use the Euler-type ``𝒟 = d/dy ∘ y``; an operator acting on them is first
rewritten in ``θ = y d/dy = 𝒟 - 1``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

from .exactcore import GEN, PARAM_RING, ParamPoly, const

Y = "y"


class BasisError(Exception):
    pass


class FamilyMismatch(BasisError):
    pass


class OperatorNotEulerCompatible(BasisError):
    pass


class Derivation(enum.Enum):
    PLAIN = "PLAIN"
    EULER = "EULER"


@dataclass(frozen=True)
class BasisFamily:
    id: str
    names: tuple[str, ...]
    derivation: Derivation
    nu: int | None = None

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def kind(self) -> str:
        return "airy" if self.id.startswith("AIRY") else "bessel"

    def with_nu(self, nu: int | None) -> "BasisFamily":
        if nu is not None and self.size != 5:
            raise BasisError("nu tag only applies to five-element families")
        return BasisFamily(self.id, self.names, self.derivation, nu)

    def describe(self) -> dict[str, str]:
        return dict(zip(self.names, _DESCRIPTIONS[self.id[:-1]]))


AIRY3 = BasisFamily("AIRY3", ("a1", "a2", "a3"), Derivation.PLAIN)
AIRY5 = BasisFamily("AIRY5", ("a1", "a2", "a3", "a4", "a5"), Derivation.PLAIN)
BESSEL3 = BasisFamily("BESSEL3", ("b1", "b2", "b3"), Derivation.EULER)
BESSEL5 = BasisFamily("BESSEL5", ("b1", "b2", "b3", "b4", "b5"), Derivation.EULER)
FAMILIES = {f.id: f for f in (AIRY3, AIRY5, BESSEL3, BESSEL5)}

_DESCRIPTIONS = {
    "AIRY": ("Ai^2", "Ai'^2", "Ai*Ai'", "Ai*AI_nu", "Ai'*AI_nu"),
    "BESSEL": ("J_a(√y)^2/y", "J_a'(√y)^2", "J_a*J_a'/√y", "J_a*JI_a/√y", "J_a'*JI_a"),
}


def _p(d: Mapping[int, object]) -> ParamPoly:
    return ParamPoly(Y, d)


_A = GEN["A"]

# derivative of each basis element as {target index: coefficient}
_CLOSURE = {
    "AIRY": [
        {2: _p({0: 2})},
        {2: _p({1: 2})},
        {1: _p({0: 1}), 0: _p({1: 1})},
        {4: _p({0: 1}), 0: _p({0: 1})},
        {3: _p({1: 1}), 2: _p({0: 1})},
    ],
    # Euler derivation 𝒟 = d/dy ∘ y
    "BESSEL": [
        {2: _p({0: 1})},
        {2: _p({1: -1, 0: _A})},
        {0: _p({1: Fraction(-1, 2), 0: _A * const(Fraction(1, 2))}), 1: _p({0: Fraction(1, 2)})},
        {3: _p({0: Fraction(1, 2)}), 4: _p({0: Fraction(1, 2)}), 0: _p({1: Fraction(-1, 2)})},
        {4: _p({0: Fraction(1, 2)}), 3: _p({1: Fraction(-1, 2), 0: _A * const(Fraction(1, 2))}),
         2: _p({1: Fraction(-1, 2)})},
    ],
}


def closure_rule(family: BasisFamily, i: int) -> dict[int, ParamPoly]:
    return _CLOSURE[family.kind.upper()][i]


_ZERO = ParamPoly(Y)


class ModuleElement:
    """Σ_i p_i(y) b_i with p_i polynomials in y over Q[params]."""

    __slots__ = ("family", "coeffs")

    def __init__(self, family: BasisFamily, coeffs: Sequence[ParamPoly] | Mapping[int, ParamPoly]):
        self.family = family
        if isinstance(coeffs, Mapping):
            full = [coeffs.get(i, _ZERO) for i in range(family.size)]
        else:
            full = list(coeffs) + [_ZERO] * (family.size - len(coeffs))
        if len(full) != family.size:
            raise FamilyMismatch(f"{family.id} has {family.size} elements")
        self.coeffs = tuple(c if isinstance(c, ParamPoly) else ParamPoly.constant(c) for c in full)

    @classmethod
    def zero(cls, family: BasisFamily) -> "ModuleElement":
        return cls(family, [_ZERO] * family.size)

    @classmethod
    def basis(cls, family: BasisFamily, i: int, poly: ParamPoly | None = None) -> "ModuleElement":
        c = [_ZERO] * family.size
        c[i] = poly if poly is not None else ParamPoly.constant(1)
        return cls(family, c)

    def _same(self, other: "ModuleElement") -> None:
        if self.family.id != other.family.id:
            raise FamilyMismatch(f"{self.family.id} vs {other.family.id}")

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        self._same(other)
        return ModuleElement(self.family, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        self._same(other)
        return ModuleElement(self.family, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "ModuleElement":
        return ModuleElement(self.family, [-a for a in self.coeffs])

    def scale(self, c) -> "ModuleElement":
        """Multiply by a ParamPoly in y, a ring element or a number."""
        return ModuleElement(self.family, [a * c for a in self.coeffs])

    __mul__ = scale
    __rmul__ = scale

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.family.id == other.family.id and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.family.id, self.coeffs))

    def subs_param(self, name: str, value) -> "ModuleElement":
        return ModuleElement(self.family, [c.subs_param(name, value) for c in self.coeffs])

    def params(self) -> frozenset[str]:
        out: frozenset[str] = frozenset()
        for c in self.coeffs:
            out |= c.params
        return out

    def coordinates(self) -> list[tuple[tuple[int, int], object]]:
        """Nonzero (basis index, y-power) coordinates in canonical order."""
        out = []
        for i, c in enumerate(self.coeffs):
            for e in sorted(c.coeffs):
                out.append(((i, e), c.coeffs[e]))
        return out

    def to_json(self) -> dict:
        return {
            "family": self.family.id,
            "nu": self.family.nu,
            "coefficients": [[n, c.to_json()] for n, c in zip(self.family.names, self.coeffs)],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "ModuleElement":
        fam = FAMILIES[data["family"]].with_nu(data.get("nu"))
        by_name = {n: ParamPoly.from_json(t) for n, t in data["coefficients"]}
        return cls(fam, [by_name.get(n, _ZERO) for n in fam.names])

    def __str__(self) -> str:
        parts = [f"({c})*{n}" for n, c in zip(self.family.names, self.coeffs) if not c.is_zero()]
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


def _elem_params_normalised(elem: ModuleElement) -> ModuleElement:
    if "Ã" in elem.params():
        return elem.subs_param("Ã", GEN["A"] - 1)
    return elem


def differentiate(elem: ModuleElement) -> ModuleElement:
    """Apply the family's derivation: d/dy for Airy, 𝒟 = d/dy∘y for Bessel."""
    fam = elem.family
    out = [_ZERO] * fam.size
    euler = fam.derivation is Derivation.EULER
    for i, p in enumerate(elem.coeffs):
        if p.is_zero():
            continue
        # product rule: for Euler, 𝒟(p b) = y p' b + p 𝒟b
        dp = p.derivative()
        if euler:
            dp = dp.shift(1)
        out[i] = out[i] + dp
        for j, q in closure_rule(fam, i).items():
            out[j] = out[j] + p * q
    return ModuleElement(fam, out)


def theta(elem: ModuleElement) -> ModuleElement:
    """θ = y d/dy.  For Bessel families this is 𝒟 - 1."""
    if elem.family.derivation is Derivation.EULER:
        return differentiate(elem) - elem
    d = differentiate(elem)
    return ModuleElement(elem.family, [c.shift(1) for c in d.coeffs])


class DiffOperator:
    """Linear differential operator Σ_k c_k(y) ∂^k with coefficients on the left.

    ``form`` is ``"plain"`` (∂ = d/dy) or ``"theta"`` (∂ = θ = y d/dy).
    """

    __slots__ = ("terms", "form", "variable")

    def __init__(self, terms: Mapping[int, ParamPoly], form: str = "plain", variable: str = Y):
        if form not in ("plain", "theta"):
            raise ValueError(form)
        self.form = form
        self.variable = variable
        self.terms = {k: p for k, p in terms.items() if not p.is_zero()}

    def order(self) -> int:
        return max(self.terms) if self.terms else -1

    def coeff(self, k: int) -> ParamPoly:
        return self.terms.get(k, ParamPoly(self.variable))

    def params(self) -> frozenset[str]:
        out: frozenset[str] = frozenset()
        for p in self.terms.values():
            out |= p.params
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOperator):
            return NotImplemented
        a = self if self.form == "plain" else self.to_plain()
        b = other if other.form == "plain" else other.to_plain()
        return a.terms == b.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms)))

    def _combine(self, other: "DiffOperator", sign: int) -> "DiffOperator":
        a = self if self.form == "plain" else self.to_plain()
        b = other if other.form == "plain" else other.to_plain()
        out = dict(a.terms)
        for k, p in b.terms.items():
            out[k] = out.get(k, ParamPoly(self.variable)) + (p if sign > 0 else -p)
        return DiffOperator(out)

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        return self._combine(other, 1)

    def __sub__(self, other: "DiffOperator") -> "DiffOperator":
        return self._combine(other, -1)

    def __neg__(self) -> "DiffOperator":
        return DiffOperator({k: -p for k, p in self.terms.items()}, self.form)

    def scale(self, c) -> "DiffOperator":
        return DiffOperator({k: p * c for k, p in self.terms.items()}, self.form)

    def compose(self, other: "DiffOperator") -> "DiffOperator":
        """self ∘ other, in plain form."""
        a = self if self.form == "plain" else self.to_plain()
        b = other if other.form == "plain" else other.to_plain()
        out: dict[int, ParamPoly] = {}
        for k, p in a.terms.items():
            for m, q in b.terms.items():
                qi = q
                for i in range(k + 1):
                    if qi.is_zero():
                        break
                    t = p * qi * comb(k, i)
                    key = k - i + m
                    out[key] = out.get(key, ParamPoly(Y)) + t
                    qi = qi.derivative()
        return DiffOperator(out)

    def subs_param(self, name: str, value) -> "DiffOperator":
        return DiffOperator({k: p.subs_param(name, value) for k, p in self.terms.items()}, self.form)

    def substitute_scale(self, s: Fraction) -> "DiffOperator":
        """Rewrite in z where y = s*z: y^m d_y^k -> s^(m-k) z^m d_z^k."""
        s = Fraction(s)
        a = self if self.form == "plain" else self.to_plain()
        return DiffOperator({k: p.scale_variable(s) * (s ** -k) for k, p in a.terms.items()})

    def to_plain(self) -> "DiffOperator":
        if self.form == "plain":
            return self
        out: dict[int, ParamPoly] = {}
        for i, p in self.terms.items():
            for k in range(i + 1):
                s = stirling2(i, k)
                if s:
                    out[k] = out.get(k, ParamPoly(Y)) + p.shift(k) * s
        return DiffOperator(out)

    def to_json(self) -> list:
        return [[k, self.terms[k].to_json()] for k in sorted(self.terms)]

    @classmethod
    def from_json(cls, data: list, form: str = "plain") -> "DiffOperator":
        return cls({k: ParamPoly.from_json(t) for k, t in data}, form)

    def __str__(self) -> str:
        sym = "d" if self.form == "plain" else "θ"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = str(self.terms[k])
            if k == 0:
                parts.append(f"({c})")
            else:
                dk = sym if k == 1 else f"{sym}^{k}"
                parts.append(dk if c == "1" else f"({c})*{dk}")
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


@lru_cache(maxsize=None)
def stirling1(n: int, k: int) -> int:
    """Signed Stirling numbers of the first kind."""
    if n == k:
        return 1
    if n == 0 or k == 0:
        return 0
    return stirling1(n - 1, k - 1) - (n - 1) * stirling1(n - 1, k)


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if n == 0 or k == 0:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def euler_normalize(op: DiffOperator) -> DiffOperator:
    """Rewrite Σ p_k d^k as Σ q_i θ^i; needs y^k | p_k for every k."""
    if op.form == "theta":
        return op
    out: dict[int, ParamPoly] = {}
    for k, p in op.terms.items():
        if p.low_degree() < k:
            raise OperatorNotEulerCompatible(f"coefficient of d^{k} is not divisible by y^{k}: {p}")
        q = p.shift(-k)
        q = ParamPoly(q.variable, q.coeffs)
        for i in range(k + 1):
            s = stirling1(k, i)
            if s:
                out[i] = out.get(i, ParamPoly(Y)) + q * s
    return DiffOperator(out, "theta")


def apply_operator(op: DiffOperator, elem: ModuleElement) -> ModuleElement:
    if "Ã" in op.params() and elem.family.kind == "bessel":
        op = op.subs_param("Ã", GEN["A"] - 1)
    if elem.family.derivation is Derivation.EULER:
        op = euler_normalize(op)
    step = theta if op.form == "theta" else differentiate
    out = ModuleElement.zero(elem.family)
    cur = elem
    for k in range(op.order() + 1):
        if k:
            cur = step(cur)
        c = op.terms.get(k)
        if c is not None:
            out = out + cur.scale(c)
    return out


# --- parsing operators from compact strings ----------------------------------

@lru_cache(maxsize=None)
def _sympy_env():
    import sympy
    names = {"y": sympy.Symbol("y"), "d": sympy.Symbol("d"), "A": sympy.Symbol("A"),
             "T": sympy.Symbol("T"), "At": sympy.Symbol("At"), "beta": sympy.Symbol("beta")}
    return sympy, names


def _ring_from_sympy(expr) -> object:
    sympy, names = _sympy_env()
    poly = sympy.Poly(expr, names["A"], names["T"], names["At"])
    acc = PARAM_RING.zero
    for mono, c in poly.terms():
        c = sympy.Rational(c)
        term = const(Fraction(int(c.p), int(c.q)))
        for g, e in zip((GEN["A"], GEN["T"], GEN["Ã"]), mono):
            term = term * g ** e
        acc = acc + term
    return acc


@lru_cache(maxsize=None)
def parse_operator(text: str, beta: Fraction | None = None) -> DiffOperator:
    """Parse e.g. ``"d**3 - 4*y*d + 2"``; ``d`` stands for d/dy, coefficients
    are written to its left.  ``At`` is Ã, ``beta`` is replaced by ``beta``."""
    sympy, names = _sympy_env()
    expr = sympy.sympify(text.replace("Ã", "At"), locals=names)
    if beta is not None:
        expr = expr.subs(names["beta"], sympy.Rational(beta.numerator, beta.denominator))
    if expr.free_symbols & {names["beta"]}:
        raise BasisError("operator depends on beta but none given")
    poly = sympy.Poly(sympy.expand(expr), names["d"], names["y"])
    terms: dict[int, dict[int, object]] = {}
    for (k, m), c in poly.terms():
        terms.setdefault(k, {})
        terms[k][m] = terms[k].get(m, PARAM_RING.zero) + _ring_from_sympy(c)
    return DiffOperator({k: ParamPoly(Y, d) for k, d in terms.items()})


@lru_cache(maxsize=None)
def parse_poly(text: str) -> ParamPoly:
    op = parse_operator(text)
    if op.order() > 0:
        raise BasisError("polynomial must not contain d")
    return op.coeff(0)


def element(family: BasisFamily, *coeffs: str | ParamPoly) -> ModuleElement:
    """Build an element from coefficient strings such as ``"-3/5*y**2"``."""
    return ModuleElement(family, [c if isinstance(c, ParamPoly) else parse_poly(c) for c in coeffs])


def eval_numeric(elem: ModuleElement, y, a=None, tau=None, dps: int = 30):
    """Evaluate Σ p_i(y) b_i(y) numerically with mpmath.

    ``a`` is the Bessel order (A = a², Ã = a² - 1); ``tau`` binds T.
    """
    import mpmath

    from .numerics import special

    with mpmath.workdps(dps + 10):
        y = mpmath.mpf(y)
        params = {}
        if a is not None:
            a = mpmath.mpf(a)
            params["A"] = a * a
            params["Ã"] = a * a - 1
        if tau is not None:
            params["T"] = mpmath.mpf(tau)
        vals = special.basis_values(elem.family, y, a=a, nu=elem.family.nu)
        total = mpmath.mpf(0)
        for p, v in zip(elem.coeffs, vals):
            if not p.is_zero():
                total += p.evaluate(y, params) * v
        return +total
