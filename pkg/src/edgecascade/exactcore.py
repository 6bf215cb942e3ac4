"""Exact arithmetic over Q[A, T, Ã] and a fraction-free linear solver.

Polynomials in the formal parameters are elements of a sympy sparse ring
(``PARAM_RING``).  A ``ParamPoly`` is a univariate polynomial in one of the
formal variables whose coefficients live in that ring.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from sympy.polys.domains import QQ
from sympy.polys.fields import field as _make_field
from sympy.polys.rings import PolyElement, ring as _make_ring

ParamRational = Fraction

PARAM_NAMES = ("A", "T", "Ã")
_INTERNAL_NAMES = "A,T,At"
PARAM_RING, _A, _T, _AT = _make_ring(_INTERNAL_NAMES, QQ)
PARAM_FIELD = _make_field(_INTERNAL_NAMES, QQ)[0]
GEN = {"A": _A, "T": _T, "Ã": _AT}

VARIABLES = ("y", "γ", "u", "x")
DEGREE_BOUND = 16


class ExactCoreError(Exception):
    pass


class DegreeBoundExceeded(ExactCoreError):
    pass


class VariableMismatch(ExactCoreError):
    pass


class ParamMismatch(ExactCoreError):
    pass


class NonPolynomialCoefficient(ExactCoreError):
    pass


def to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def const(c) -> "PolyElement":
    """Ring constant from an int, Fraction or string like '3/5'."""
    if isinstance(c, str):
        c = Fraction(c)
    if isinstance(c, Fraction):
        return PARAM_RING(QQ(c.numerator, c.denominator))
    return PARAM_RING(c)


def params_of(p) -> frozenset[str]:
    used = set()
    for mono in p.monoms():
        for name, e in zip(PARAM_NAMES, mono):
            if e:
                used.add(name)
    return frozenset(used)


def check_degree(p) -> None:
    if p and max(p.degrees()) > DEGREE_BOUND:
        raise DegreeBoundExceeded(f"parameter degree {max(p.degrees())} exceeds {DEGREE_BOUND}")


def mono_str(mono: tuple[int, ...]) -> str:
    parts = []
    for name, e in zip(PARAM_NAMES, mono):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def parse_mono(s: str) -> tuple[int, int, int]:
    exps = [0, 0, 0]
    if s == "1":
        return tuple(exps)
    for part in s.split("*"):
        name, _, e = part.partition("^")
        exps[PARAM_NAMES.index(name)] += int(e) if e else 1
    return tuple(exps)


def coeff_str(p) -> str:
    """Human readable form of a ring element, using A, T, Ã."""
    if not p:
        return "0"
    out = []
    for mono, c in sorted(p.terms(), reverse=True):
        fr = to_fraction(c)
        m = mono_str(mono)
        if m == "1":
            out.append(str(fr))
        elif fr == 1:
            out.append(m)
        elif fr == -1:
            out.append("-" + m)
        else:
            out.append(f"{fr}*{m}")
    return " + ".join(out).replace("+ -", "- ")


class ParamPoly:
    """Polynomial in ``variable`` with coefficients in Q[A, T, Ã].

    Stored as ``{exponent: ring element}`` with no zero entries.  Negative
    exponents are allowed only when ``laurent`` is set.
    """

    __slots__ = ("variable", "params", "coeffs", "laurent")

    def __init__(self, variable: str = "y", coeffs: Mapping[int, object] | None = None,
                 params: Iterable[str] | None = None, laurent: bool = False):
        if variable not in VARIABLES:
            raise VariableMismatch(f"unknown variable {variable!r}")
        self.variable = variable
        self.laurent = laurent
        clean: dict[int, object] = {}
        used: set[str] = set()
        for e, c in (coeffs or {}).items():
            if not isinstance(c, PolyElement):
                c = const(c)
            if not c:
                continue
            if e < 0 and not laurent:
                raise ValueError("negative exponent in a polynomial")
            check_degree(c)
            clean[int(e)] = c
            used |= params_of(c)
        self.coeffs = clean
        declared = frozenset(params) if params is not None else frozenset()
        self.params = declared | frozenset(used)

    # construction helpers
    @classmethod
    def monomial(cls, k: int, c=1, variable: str = "y") -> "ParamPoly":
        return cls(variable, {k: c})

    @classmethod
    def constant(cls, c, variable: str = "y") -> "ParamPoly":
        return cls(variable, {0: c})

    @classmethod
    def from_dict(cls, d: Mapping[int, object], variable: str = "y") -> "ParamPoly":
        return cls(variable, d)

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return max(self.coeffs) if self.coeffs else -1

    def low_degree(self) -> int:
        return min(self.coeffs) if self.coeffs else 0

    def coeff(self, k: int):
        return self.coeffs.get(k, PARAM_RING.zero)

    def _check(self, other: "ParamPoly") -> None:
        if self.variable != other.variable:
            raise VariableMismatch(f"{self.variable} vs {other.variable}")

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ParamPoly.constant(other, self.variable)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.variable == other.variable and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.variable, tuple(sorted((e, str(c)) for e, c in self.coeffs.items()))))

    def __add__(self, other: "ParamPoly") -> "ParamPoly":
        return poly_add(self, other)

    def __sub__(self, other: "ParamPoly") -> "ParamPoly":
        return poly_add(self, -other)

    def __neg__(self) -> "ParamPoly":
        return ParamPoly(self.variable, {e: -c for e, c in self.coeffs.items()}, self.params, self.laurent)

    def __mul__(self, other) -> "ParamPoly":
        if isinstance(other, ParamPoly):
            return poly_mul(self, other)
        c = other if isinstance(other, PolyElement) else const(other)
        return ParamPoly(self.variable, {e: v * c for e, v in self.coeffs.items()}, self.params, self.laurent)

    __rmul__ = __mul__

    def shift(self, k: int) -> "ParamPoly":
        """Multiply by variable**k."""
        return ParamPoly(self.variable, {e + k: c for e, c in self.coeffs.items()}, self.params,
                         self.laurent or k < 0)

    def derivative(self) -> "ParamPoly":
        return ParamPoly(self.variable, {e - 1: c * e for e, c in self.coeffs.items() if e},
                         self.params, self.laurent)

    def subs_param(self, name: str, value) -> "ParamPoly":
        """Substitute a parameter by a ring element or number."""
        g = GEN[name]
        v = value if isinstance(value, PolyElement) else const(value)
        return ParamPoly(self.variable, {e: c.compose(g, v) for e, c in self.coeffs.items()},
                         self.params - {name}, self.laurent)

    def rename(self, variable: str) -> "ParamPoly":
        return ParamPoly(variable, self.coeffs, self.params, self.laurent)

    def scale_variable(self, c: Fraction) -> "ParamPoly":
        """p(c*v) as a polynomial in v."""
        c = Fraction(c)
        return ParamPoly(self.variable, {e: v * const(c ** e) for e, v in self.coeffs.items()},
                         self.params, self.laurent)

    def evaluate(self, at, params: Mapping[str, object] | None = None):
        return poly_evaluate(self, at, params)

    def to_json(self) -> list:
        terms = []
        for e, c in self.coeffs.items():
            for mono, q in c.terms():
                fr = to_fraction(q)
                terms.append([e, mono_str(mono), f"{fr.numerator}/{fr.denominator}"])
        terms.sort(key=lambda t: (t[0], t[1]))
        return terms

    @classmethod
    def from_json(cls, terms: list, variable: str = "y") -> "ParamPoly":
        acc: dict[int, object] = {}
        for e, m, q in terms:
            mono = parse_mono(m)
            term = PARAM_RING({mono: QQ(*map(int, q.split("/")))})
            acc[e] = acc.get(e, PARAM_RING.zero) + term
        return cls(variable, acc, laurent=any(e < 0 for e in acc))

    def __repr__(self) -> str:
        return f"ParamPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        v = self.variable
        for e in sorted(self.coeffs, reverse=True):
            c = coeff_str(self.coeffs[e])
            if len(self.coeffs[e].terms()) > 1:
                c = f"({c})"
            if e == 0:
                parts.append(c)
            else:
                vv = v if e == 1 else f"{v}^{e}"
                parts.append(vv if c == "1" else ("-" + vv if c == "-1" else f"{c}*{vv}"))
        return " + ".join(parts).replace("+ -", "- ")


def poly_add(p: ParamPoly, q: ParamPoly, promote: bool = True) -> ParamPoly:
    p._check(q)
    if not promote and p.params != q.params:
        raise ParamMismatch(f"{sorted(p.params)} vs {sorted(q.params)}")
    out = dict(p.coeffs)
    for e, c in q.coeffs.items():
        out[e] = out.get(e, PARAM_RING.zero) + c
    return ParamPoly(p.variable, out, p.params | q.params, p.laurent or q.laurent)


def poly_mul(p: ParamPoly, q: ParamPoly, promote: bool = True) -> ParamPoly:
    p._check(q)
    if not promote and p.params != q.params:
        raise ParamMismatch(f"{sorted(p.params)} vs {sorted(q.params)}")
    out: dict[int, object] = {}
    for e1, c1 in p.coeffs.items():
        for e2, c2 in q.coeffs.items():
            out[e1 + e2] = out.get(e1 + e2, PARAM_RING.zero) + c1 * c2
    return ParamPoly(p.variable, out, p.params | q.params, p.laurent or q.laurent)


def poly_derivative(p: ParamPoly) -> ParamPoly:
    return p.derivative()


def ring_evaluate(c, params: Mapping[str, object] | None):
    """Evaluate a ring element; returns a Fraction when params are rational."""
    params = params or {}
    for mono in c.monoms():
        for name, e in zip(PARAM_NAMES, mono):
            if e and name not in params:
                raise ParamMismatch(f"parameter {name} unbound")
    total = 0
    for mono, q in c.terms():
        term = to_fraction(q)
        for name, e in zip(PARAM_NAMES, mono):
            if e:
                term = term * params[name] ** e
        total = total + term
    return total


def poly_evaluate(p: ParamPoly, at, params: Mapping[str, object] | None = None):
    """Evaluate at a number (Fraction, int, mpf...).  Exact when inputs are."""
    total = 0
    for e, c in p.coeffs.items():
        total = total + ring_evaluate(c, params) * at ** e
    return total


# --- linear solver -----------------------------------------------------------

@dataclass
class LinearSolution:
    """Result of :func:`solve_exact`.

    Entries of ``particular`` and ``nullspace`` are elements of
    ``PARAM_FIELD`` (rational functions in the parameters).
    """

    particular: list | None
    nullspace: list[list] = field(default_factory=list)
    consistent: bool = True
    certificate: int | None = None
    pivots: list[int] = field(default_factory=list)
    max_degree: int = 0


def _primitive(row: list) -> list:
    nz = [c for c in row if c]
    if not nz:
        return row
    g = nz[0]
    for c in nz[1:]:
        if g == 1:
            break
        g = g.gcd(c)
    if g != 1 and not g.is_ground:
        row = [c.exquo(g) if c else c for c in row]
    return row


def solve_exact(matrix: list[list], rhs: list, ncols: int | None = None) -> LinearSolution:
    """Solve ``matrix @ x = rhs`` exactly.

    Entries are ring elements (or numbers).  Elimination is fraction-free:
    rows are cross-multiplied and reduced to their primitive part, and the
    only divisions happen when reading off the solution.  Pivoting takes,
    column by column, the first row with a nonzero entry.  Free columns are
    set to zero in the particular solution.
    """
    nrows = len(matrix)
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    rows = []
    for i in range(nrows):
        r = [c if isinstance(c, PolyElement) else const(c) for c in matrix[i]]
        b = rhs[i] if isinstance(rhs[i], PolyElement) else const(rhs[i])
        rows.append(_primitive(r + [b]))
    origin = list(range(nrows))
    pivots: list[int] = []
    stats = {"max_degree": 0}
    prow = 0
    for col in range(ncols):
        sel = next((i for i in range(prow, nrows) if rows[i][col]), None)
        if sel is None:
            continue
        rows[prow], rows[sel] = rows[sel], rows[prow]
        origin[prow], origin[sel] = origin[sel], origin[prow]
        piv = rows[prow]
        lc = piv[col]
        for i in range(nrows):
            if i == prow or not rows[i][col]:
                continue
            f = rows[i][col]
            g = lc.gcd(f) if not (lc.is_ground and f.is_ground) else PARAM_RING.one
            a, b = lc.exquo(g), f.exquo(g)
            rows[i] = _primitive([a * x - b * y for x, y in zip(rows[i], piv)])
            deg = max((max(c.degrees()) for c in rows[i] if c), default=0)
            if deg > DEGREE_BOUND:
                raise DegreeBoundExceeded(f"elimination reached parameter degree {deg}")
            stats["max_degree"] = max(stats["max_degree"], deg)
        pivots.append(col)
        prow += 1
        if prow == nrows:
            break
    for i in range(prow, nrows):
        if rows[i][ncols]:
            return LinearSolution(None, [], False, origin[i], pivots, stats["max_degree"])
    F = PARAM_FIELD
    particular = [F.zero] * ncols
    for r, col in enumerate(pivots):
        particular[col] = F(rows[r][ncols]) / F(rows[r][col])
    free = [c for c in range(ncols) if c not in set(pivots)]
    nullspace = []
    for fcol in free:
        vec = [F.zero] * ncols
        vec[fcol] = F.one
        for r, col in enumerate(pivots):
            if rows[r][fcol]:
                vec[col] = -F(rows[r][fcol]) / F(rows[r][col])
        nullspace.append(vec)
    return LinearSolution(particular, nullspace, True, None, pivots, stats["max_degree"])


def field_to_ring(x):
    """Convert a field element with constant denominator to a ring element."""
    den = x.denom
    if not den.is_ground:
        raise NonPolynomialCoefficient(f"rational function coefficient {x}")
    return x.numer * PARAM_RING(QQ(1) / den.LC)
