"""Laplace-side algebra: transforms of Airy-family elements.

A transform is held in three sectors, each a Laurent polynomial with an
implicit factor:

* A: powers γ^(k/2), factor e^(γ³/12)/√π
* B: integer powers, factor e^(γ³/3)
* C: integer powers, factor e^(γ³/3) Erf(γ^(3/2)/2)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping

from ..basisalg import DiffOperator, ModuleElement
from ..exactcore import solve_exact, to_fraction

HALF = Fraction(1, 2)


def _clean(d: Mapping) -> dict:
    return {k: v for k, v in d.items() if v}


def _addto(d: dict, k, v) -> None:
    d[k] = d.get(k, 0) + v


@dataclass(frozen=True)
class TransformElement:
    A: Mapping[Fraction, Fraction] = field(default_factory=dict)
    B: Mapping[int, Fraction] = field(default_factory=dict)
    C: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "A", _clean({Fraction(k): Fraction(v) for k, v in self.A.items()}))
        object.__setattr__(self, "B", _clean({int(k): Fraction(v) for k, v in self.B.items()}))
        object.__setattr__(self, "C", _clean({int(k): Fraction(v) for k, v in self.C.items()}))
        for k in self.A:
            if k.denominator != 2:
                raise ValueError("sector A holds half-odd-integer powers only")

    def _merge(self, other: "TransformElement", s: int) -> "TransformElement":
        out = []
        for a, b in ((self.A, other.A), (self.B, other.B), (self.C, other.C)):
            d = dict(a)
            for k, v in b.items():
                _addto(d, k, s * v)
            out.append(d)
        return TransformElement(*out)

    def __add__(self, other: "TransformElement") -> "TransformElement":
        return self._merge(other, 1)

    def __sub__(self, other: "TransformElement") -> "TransformElement":
        return self._merge(other, -1)

    def __neg__(self) -> "TransformElement":
        return self.scale(-1)

    def scale(self, c) -> "TransformElement":
        c = Fraction(c)
        return TransformElement({k: c * v for k, v in self.A.items()}, {k: c * v for k, v in self.B.items()},
                                {k: c * v for k, v in self.C.items()})

    def shift(self, k: int) -> "TransformElement":
        """Multiply by γ^k."""
        return TransformElement({e + k: v for e, v in self.A.items()}, {e + k: v for e, v in self.B.items()},
                                {e + k: v for e, v in self.C.items()})

    def is_zero(self) -> bool:
        return not (self.A or self.B or self.C)

    def derivative(self) -> "TransformElement":
        A: dict = {}
        B: dict = {}
        C: dict = {}
        for e, v in self.A.items():
            _addto(A, e - 1, e * v)
            _addto(A, e + 2, v / 4)
        for e, v in self.B.items():
            _addto(B, e - 1, e * v)
            _addto(B, e + 2, v)
        for e, v in self.C.items():
            _addto(C, e - 1, e * v)
            _addto(C, e + 2, v)
            # d/dγ Erf(γ^(3/2)/2) = (3/2) γ^(1/2) e^(-γ³/4)/√π
            _addto(A, e + HALF, Fraction(3, 2) * v)
        return TransformElement(A, B, C)

    def coordinates(self) -> list[tuple[tuple[str, Fraction], Fraction]]:
        out = [(("A", k), v) for k, v in sorted(self.A.items())]
        out += [(("B", Fraction(k)), v) for k, v in sorted(self.B.items())]
        out += [(("C", Fraction(k)), v) for k, v in sorted(self.C.items())]
        return out

    def evaluate(self, gamma, dps: int = 30):
        import mpmath
        with mpmath.workdps(dps + 10):
            g = mpmath.mpf(gamma)
            ea = mpmath.exp(g ** 3 / 12) / mpmath.sqrt(mpmath.pi)
            eb = mpmath.exp(g ** 3 / 3)
            erf = mpmath.erf(g ** mpmath.mpf(1.5) / 2)
            q = lambda f: mpmath.mpf(Fraction(f).numerator) / Fraction(f).denominator
            tot = mpmath.mpf(0)
            for k, v in self.A.items():
                tot += q(v) * g ** q(k) * ea
            for k, v in self.B.items():
                tot += q(v) * g ** q(k) * eb
            for k, v in self.C.items():
                tot += q(v) * g ** q(k) * eb * erf
            return +tot

    def to_json(self) -> dict:
        f = lambda d: [[str(k), f"{v.numerator}/{v.denominator}"] for k, v in sorted(d.items())]
        return {"A": f(self.A), "B": f(self.B), "C": f(self.C)}

    def __str__(self) -> str:
        def sec(d, tag):
            return " + ".join(f"{v}*γ^{k}" for k, v in sorted(d.items())) + f" [{tag}]"
        parts = []
        if self.A:
            parts.append(sec(self.A, "e^(γ³/12)/√π"))
        if self.B:
            parts.append(sec(self.B, "e^(γ³/3)"))
        if self.C:
            parts.append(sec(self.C, "e^(γ³/3) Erf"))
        return "  +  ".join(parts) if parts else "0"


def transform_basis(i: int, nu: int | None = None) -> TransformElement:
    """Transform of the i-th Airy basis element (0-based: a1..a5)."""
    h1 = TransformElement({-HALF: HALF})
    if i == 0:
        return h1
    if i == 1:
        return h1.shift(-1) + h1.derivative()
    if i == 2:
        return h1.shift(1).scale(-HALF)
    if nu is None:
        raise ValueError("transforms of a4, a5 depend on the nu tag")
    h4 = TransformElement({}, {0: Fraction(nu) - HALF}, {0: HALF})
    if i == 3:
        return h4
    if i == 4:
        return -h1 - h4.shift(1)
    raise IndexError(i)


def transform_element(elem: ModuleElement, nu: int | None = None) -> TransformElement:
    """y^k b_i goes to (d/dγ)^k of the transform of b_i."""
    if elem.family.kind != "airy":
        raise ValueError("only Airy families have a Laplace table")
    if elem.params():
        raise ValueError("bind the parameters before transforming")
    nu = elem.family.nu if nu is None else nu
    out = TransformElement()
    for i, p in enumerate(elem.coeffs):
        if p.is_zero():
            continue
        base = transform_basis(i, nu)
        for k in range(p.degree() + 1):
            if k:
                base = base.derivative()
            c = p.coeff(k)
            if c:
                out = out + base.scale(to_fraction(c.LC))
    return out


# --- operators on the transform side ------------------------------------------

@dataclass(frozen=True)
class LaplaceOperator:
    """Σ_k c_k(γ) d^k/dγ^k with c_k Laurent polynomials {power: coefficient}."""

    terms: Mapping[int, Mapping[int, Fraction]]

    def apply(self, u: TransformElement) -> TransformElement:
        out = TransformElement()
        cur = u
        for k in range(max(self.terms, default=-1) + 1):
            if k:
                cur = cur.derivative()
            for p, c in self.terms.get(k, {}).items():
                out = out + cur.shift(p).scale(c)
        return out

    def __eq__(self, other) -> bool:
        norm = lambda t: {k: {p: Fraction(c) for p, c in v.items() if c} for k, v in t.items() if any(v.values())}
        return isinstance(other, LaplaceOperator) and norm(self.terms) == norm(other.terms)

    def __hash__(self) -> int:
        return 0


def laplace_operator(op: DiffOperator) -> LaplaceOperator:
    """Image of a y-side operator: y^m f^(k) goes to ∂^m ∘ (-γ)^k."""
    acc: dict[int, dict[int, Fraction]] = {}
    plain = op.to_plain()
    for k, poly in plain.terms.items():
        for m, c in poly.coeffs.items():
            if c.monoms() != [(0, 0, 0)] and c:
                raise ValueError("bind the parameters first")
            cf = to_fraction(c.LC) * (-1) ** k
            # ∂^m (γ^k F) = Σ_i C(m,i) (γ^k)^(i) F^(m-i)
            for i in range(min(m, k) + 1):
                fall = 1
                for t in range(i):
                    fall *= k - t
                coef = cf * comb(m, i) * fall
                d = acc.setdefault(m - i, {})
                d[k - i] = d.get(k - i, 0) + coef
    return LaplaceOperator(acc)


def parse_laplace(text: str) -> LaplaceOperator:
    """Parse ``"4*g*d + (6 - g**3)"``; ``g`` is γ and ``d`` is d/dγ."""
    import sympy
    g, d = sympy.symbols("g d")
    poly = sympy.Poly(sympy.expand(sympy.sympify(text, locals={"g": g, "d": d})), d, g)
    terms: dict[int, dict[int, Fraction]] = {}
    for (k, p), c in poly.terms():
        c = sympy.Rational(c)
        terms.setdefault(k, {})[p] = Fraction(int(c.p), int(c.q))
    return LaplaceOperator(terms)


GUE_L0 = "4*g*d + (6 - g**3)"
GUE_RHS = "4*g*d**2 + 12*d"
GBETA_L = (
    "18*g**2 - g**5 + 5*(g**3 - 2)*d - 4*g*d**2",
    "48*g + 36*g**2*d - 5*(6 - g**3)*d**2 - 8*g*d**3",
    "-20*d**3 - 4*g*d**4",
)


# --- recursion on the transform side -------------------------------------------

@dataclass
class RecursionResult:
    particular: TransformElement
    free_parameters: int
    homogeneous: list[TransformElement]


def _ansatz_columns(j: int, beta: int) -> list[tuple[str, Fraction]]:
    cols = [("A", Fraction(-(2 * j + 3), 2) + 3 * l) for l in range(2 * j + 2)]
    if beta != 2:
        res = (2 * j) % 3
        ints = [e for e in range(0, 5 * j + 4) if e % 3 == res]
        cols += [("B", Fraction(e)) for e in ints] + [("C", Fraction(e)) for e in ints]
    return cols


def _unit(sector: str, e: Fraction) -> TransformElement:
    if sector == "A":
        return TransformElement({e: 1})
    if sector == "B":
        return TransformElement({}, {int(e): 1})
    return TransformElement({}, {}, {int(e): 1})


def solve_transform(L0: LaplaceOperator, rhs: TransformElement,
                    cols: list[tuple[str, Fraction]]) -> RecursionResult:
    images = [L0.apply(_unit(*c)) for c in cols]
    keys = sorted({k for k, _ in rhs.coordinates()} | {k for im in images for k, _ in im.coordinates()})
    index = {k: n for n, k in enumerate(keys)}
    M = [[0] * len(cols) for _ in keys]
    for c, im in enumerate(images):
        for k, v in im.coordinates():
            M[index[k]][c] = v
    b = [0] * len(keys)
    for k, v in rhs.coordinates():
        b[index[k]] = v
    sol = solve_exact(M, b, len(cols))
    if not sol.consistent:
        raise ValueError(f"no solution in the ansatz (row {keys[sol.certificate]})")

    def build(vec) -> TransformElement:
        out = TransformElement()
        for (s, e), v in zip(cols, vec):
            if v:
                num = to_fraction(v.numer.LC) / to_fraction(v.denom.LC)
                out = out + _unit(s, e).scale(num)
        return out

    return RecursionResult(build(sol.particular), len(sol.nullspace), [build(v) for v in sol.nullspace])


def recursion_step(beta: int, priors: Mapping[int, TransformElement], j: int) -> RecursionResult:
    """Solve for u_j from earlier u's.

    beta = 2 uses 4γu' + (6 - γ³)u = -(4γu''_{j-1} + 12u'_{j-1}); beta in
    {1, 4} uses the three-term second-order recursion.  Homogeneous
    components are set to zero in the returned particular solution.
    """
    if beta == 2:
        L0 = parse_laplace(GUE_L0)
        rhs = -parse_laplace(GUE_RHS).apply(priors[j - 1])
    else:
        Ls = [parse_laplace(t) for t in GBETA_L]
        L0 = Ls[0]
        rhs = TransformElement()
        for k in (1, 2):
            if j - k in priors:
                rhs = rhs - Ls[k].apply(priors[j - k])
    return solve_transform(L0, rhs, _ansatz_columns(j, beta))


# --- closed forms ------------------------------------------------------------------

def u_gue(j: int) -> TransformElement:
    if j == 0:
        return TransformElement({Fraction(-3, 2): HALF})
    if j == 1:
        c = Fraction(-1, 160)
        return TransformElement({Fraction(-5, 2): 60 * c, Fraction(1, 2): 20 * c, Fraction(7, 2): c})
    if j == 2:
        c = Fraction(1, 179200)
        coeffs = (-42000, 28000, 14840, 680, 7)
        return TransformElement({Fraction(-7, 2) + 3 * l: k * c for l, k in enumerate(coeffs)})
    raise ValueError(j)


U3_COEFFS = (Fraction(105, 16384), None, Fraction(1099, 196608), Fraction(223, 229376), Fraction(17089, 412876800),
             Fraction(27, 45875200), Fraction(1, 393216000))
U3_PRINTED_THIRD = Fraction(1099, 196600)
U3_B = Fraction(-35, 16384)
U4_COEFFS = (Fraction(-4725, 1048576), Fraction(315, 262144), Fraction(3759, 1048576), Fraction(43471, 22020096),
             Fraction(61483, 293601280), Fraction(113941, 14533263360), Fraction(114691, 924844032000),
             Fraction(37, 44040192000), Fraction(1, 503316480000))


def u_gue3(b: Fraction = U3_B, third: Fraction | None = None) -> TransformElement:
    """-4^3 γ^(-9/2) (105/16384 + b γ³ + ...) in sector A."""
    coeffs = list(U3_COEFFS)
    coeffs[1] = b
    if third is not None:
        coeffs[2] = third
    return TransformElement({Fraction(-9, 2) + 3 * l: -64 * c for l, c in enumerate(coeffs)})


def u_gue4() -> TransformElement:
    return TransformElement({Fraction(-11, 2) + 3 * l: 256 * c for l, c in enumerate(U4_COEFFS)})


def u_beta(j: int, nu: int) -> TransformElement:
    """Closed forms of the beta in {1, 4} transforms; (-1 + 2ν + Erf) multiplies B and C."""
    s = Fraction(2 * nu - 1)
    if j == 0:
        return TransformElement({Fraction(-3, 2): HALF}, {0: s / 4}, {0: Fraction(1, 4)})
    if j == 1:
        a = {Fraction(-5, 2): Fraction(-30, 80), Fraction(1, 2): Fraction(-25, 80), Fraction(7, 2): Fraction(-8, 80)}
        poly = {2: Fraction(-5, 20), 5: Fraction(-1, 20)}
    elif j == 2:
        a = {Fraction(-7, 2) + 3 * l: Fraction(k, 89600) for l, k in enumerate((-21000, 37100, 79870, 19975, 896))}
        poly = {1 + 3 * l: Fraction(k, 1400) for l, k in enumerate((700, 875, 170, 7))}
    else:
        raise ValueError(j)
    return TransformElement(a, {k: s * v for k, v in poly.items()}, dict(poly))


def fundamental_solutions() -> tuple[TransformElement, TransformElement]:
    """Homogeneous solutions of the leading beta in {1, 4} operator (second divided by √π)."""
    return TransformElement({}, {0: 1}), TransformElement({Fraction(-3, 2): Fraction(2, 3)}, {}, {0: Fraction(1, 3)})
