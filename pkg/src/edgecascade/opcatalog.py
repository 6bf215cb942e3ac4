"""Catalog of edge operators, their scaling maps and expansion variables.

Each case stores the operators exactly as graded in its natural expansion
variable (``raw_operators``) and derives the cascade form used by residual
checks, in which the correction terms satisfy Σ_k 𝒟_k r_{j-k} = 0.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .basisalg import AIRY3, AIRY5, BESSEL3, BESSEL5, BasisFamily, DiffOperator, parse_operator
from .exactcore import GEN, ParamPoly, const


class CatalogError(Exception):
    pass


class OutOfScope(CatalogError):
    pass


class IrrationalScaling(CatalogError):
    pass


GAUSSIAN = "GAUSSIAN"
LAGUERRE = "LAGUERRE"
SOFT = "SOFT_FIXED_A"
SOFT_RIGHT = "SOFT_RIGHT"
SOFT_LEFT = "SOFT_LEFT"
HARD = "HARD"


@dataclass(frozen=True)
class EdgeCase:
    ensemble: str
    beta: int
    edge: str

    def __post_init__(self):
        if self.ensemble not in (GAUSSIAN, LAGUERRE):
            raise CatalogError(f"unknown ensemble {self.ensemble}")
        if self.edge not in (SOFT, SOFT_RIGHT, SOFT_LEFT, HARD):
            raise CatalogError(f"unknown edge {self.edge}")
        if self.beta not in (1, 2, 4):
            raise OutOfScope(f"beta={self.beta} is outside {{1, 2, 4}}")
        if self.ensemble == GAUSSIAN and self.edge != SOFT:
            raise CatalogError("Gaussian ensembles only have a soft edge")
        if self.ensemble == LAGUERRE and self.beta != 2 and self.edge in (SOFT, SOFT_LEFT):
            raise OutOfScope("beta in {1, 4} Laguerre: only right soft and hard edges are catalogued")

    @property
    def key(self) -> str:
        return f"{self.ensemble}/{self.beta}/{self.edge}"

    @property
    def label(self) -> str:
        ens = {(GAUSSIAN, 2): "gue", (GAUSSIAN, 1): "goe", (GAUSSIAN, 4): "gse",
               (LAGUERRE, 2): "lue", (LAGUERRE, 1): "loe", (LAGUERRE, 4): "lse"}[(self.ensemble, self.beta)]
        edge = {SOFT: "soft", SOFT_RIGHT: "soft-right", SOFT_LEFT: "soft-left", HARD: "hard"}[self.edge]
        return f"{ens}-{edge}"


GUE_SOFT = EdgeCase(GAUSSIAN, 2, SOFT)
GOE_SOFT = EdgeCase(GAUSSIAN, 1, SOFT)
GSE_SOFT = EdgeCase(GAUSSIAN, 4, SOFT)
LUE_SOFT = EdgeCase(LAGUERRE, 2, SOFT)
LUE_SOFT_RIGHT = EdgeCase(LAGUERRE, 2, SOFT_RIGHT)
LUE_SOFT_LEFT = EdgeCase(LAGUERRE, 2, SOFT_LEFT)
LUE_HARD = EdgeCase(LAGUERRE, 2, HARD)


_ENS_ALIASES = {"gue": (GAUSSIAN, 2), "goe": (GAUSSIAN, 1), "gse": (GAUSSIAN, 4), "gbe": (GAUSSIAN, None),
                "lue": (LAGUERRE, 2), "loe": (LAGUERRE, 1), "lse": (LAGUERRE, 4), "lbe": (LAGUERRE, None)}
_EDGE_ALIASES = {"soft": SOFT, "soft-right": SOFT_RIGHT, "soft-left": SOFT_LEFT, "hard": HARD}


def parse_case(text: str) -> tuple[EdgeCase, dict[str, Fraction]]:
    """Parse strings such as ``lbe-hard:beta=1`` or ``lue-soft-right:gamma=4``."""
    head, _, tail = text.strip().lower().partition(":")
    opts: dict[str, Fraction] = {}
    for item in filter(None, tail.split(",")):
        k, _, v = item.partition("=")
        if not v:
            raise CatalogError(f"bad option {item!r}")
        opts[k.strip()] = Fraction(v.strip())
    ens, _, edge = head.partition("-")
    if ens not in _ENS_ALIASES or edge not in _EDGE_ALIASES:
        raise CatalogError(f"unknown case {text!r}")
    ensemble, beta = _ENS_ALIASES[ens]
    if beta is None:
        if "beta" not in opts:
            raise CatalogError(f"{text!r} needs beta=")
        b = opts["beta"]
        if b.denominator != 1:
            raise OutOfScope(f"beta={b}")
        beta = int(b)
    elif "beta" in opts and int(opts["beta"]) != beta:
        raise CatalogError("conflicting beta")
    if ensemble == GAUSSIAN and edge == "soft":
        edge_v = SOFT
    elif ensemble == LAGUERRE and edge == "soft" and beta != 2:
        edge_v = SOFT_RIGHT
    else:
        edge_v = _EDGE_ALIASES[edge]
    return EdgeCase(ensemble, beta, edge_v), opts


# --- operator data --------------------------------------------------------------

_G_BETA = (
    "(4/beta)*d**5 - 20*y*d**3 + 12*d**2 + 16*beta*y**2*d - 8*beta*y",
    "-5*y**2*d**3 + 6*y*d**2 + (8*beta*y**3 + 14 - 4*beta - 16/beta)*d - 6*beta*y**2",
    "beta*y**3*(y*d - 1)",
)
_G_TILDE = (
    "d**5 - 5*y*d**3 + 3*d**2 + 4*y**2*d - 2*y",
    "-5*y**2*d**3 + 6*y*d**2 + (8*y**3 - 6)*d - 6*y**2",
    "4*y**3*(y*d - 1)",
)
_GUE = ("d**3 - 4*y*d + 2", "-(y**2*d - y)")
_LUE_SOFT = (
    "d**3 - 4*y*d + 2",
    "3*y*d**3 + 4*d**2 - 8*y**2*d + 2*y",
    "3*y**2*d**3 + 8*y*d**2 - (4*y**3 + (A - 2))*d",
    "y**3*d**3 + 4*y**2*d**2 - (A - 2)*y*d - A",
)
_LUE_SR = (
    "d**3 - 4*y*d + 2",
    "T*(3*y*d**3 + 4*d**2 - 4*y**2*d - 2*y) - 4*(y**2*d - y)",
    "T**2*(3*y**2*d**3 + 8*y*d**2 + 2*d) - 4*T*y**3*d",
    "T**3*(y**3*d**3 + 4*y**2*d**2 + 2*y*d)",
)
_LUE_SL = (
    "d**3 - 4*y*d + 2",
    "-T*(3*y*d**3 + 4*d**2 - 4*y**2*d - 2*y) - 4*y**2*d + 4*y",
    "T**2*(3*y**2*d**3 + 8*y*d**2 + 2*d) + 4*T*y**3*d",
    "-T**3*(y**3*d**3 + 4*y**2*d**2 + 2*y*d)",
)
_LUE_HARD = (
    "y**3*d**3 + 4*y**2*d**2 + (y - A + 2)*y*d + y/2 - A",
    "-y**3*d",
)
_LBE_SR = (
    "(4/beta)*d**5 - 20*y*d**3 + 12*d**2 + 16*beta*y**2*d - 8*beta*y",
    "(20*T/beta)*y*d**5 + (40*T/beta)*d**4 - 5*(4 + 12*T)*y**2*d**3 + (24 - 52*T)*y*d**2"
    " + 16*beta*(2 + T)*y**3*d + 2*(16*T - 12)*d - 8*beta*(3 - T)*y**2",
    "(40*T**2*y**2/beta)*d**5 + (160*T**2*y/beta)*d**4 + (93*T**2/beta - 60*T*y**3 - 60*T**2*y**3)*d**3"
    " - (16*T + 140*T**2)*y**2*d**2 + (16*beta*y**3 + 32*beta*T*y**3 - 8*T)*y*d"
    " - (16*beta*y**3 - 8*beta*T*y**3 + 16*T - 10*T**2)",
    "(40*T**3*y**3/beta)*d**5 + (240*T**3*y**2/beta)*d**4 + (279*T**3/beta - 60*T**2*y**3 - 20*T**3*y**3)*y*d**3"
    " + (38*T**3/beta - 104*T**2*y**3 - 76*T**3*y**3)*d**2 + (16*beta*T*y**3 - 8*T**2 - 32*T**3)*y**2*d"
    " - (12*T**2 - 2*T**3)*y",
    "(20*T**4*y**4/beta)*d**5 + (160*T**4*y**3/beta)*d**4 + (279*T**4/beta - 20*T**3*y**3)*y**2*d**3"
    " + (76*T**4/beta - 64*T**3*y**3)*y*d**2 - (T**4/beta + 24*T**3*y**3)*d - 4*T**3*y**2",
    "T**5*((4*y**5/beta)*d**5 + (40*y**4/beta)*d**4 + (93*y**3/beta)*d**3 + (38*y**2/beta)*d**2"
    " - (y/beta)*d + 1/beta)",
)
_LBE_HARD = (
    "At**2 - (4 + 3*At)*y + 2*y**2 + (4*y**2 - 4*(-3 + At)*y - 16 - 14*At + At**2)*y*d"
    " + (38*y + 16 - 22*At)*y**2*d**2 + (10*y + 88 - 5*At)*y**3*d**3 + 40*y**4*d**4 + 4*y**5*d**5",
    "y**2*(At - y + 2*(-2 + At - 2*y)*y*d - 16*y**2*d**2 - 5*y**3*d**3)",
    "y**5*d",
)
# first sub-leading operator for beta = 6, stored as data only
G6_D1 = "-42*y**2*d**5 + 42*y*d**4 + 12*(98*y**3 - 9)*d**3 - 1404*y**2*d**2 - 324*y*(16*y**3 - 5)*d + 3456*y**3 - 234"

# global-scaling GUE operator in x (weight exp(-x^2), density rescaled by sqrt(2N))
GUE_GLOBAL = "(1/(4*N))**2 * d^3 - (x^2 - 1) d + x"
# unscaled LUE operator in x (weight x^a exp(-x))
LUE_RAW = "x^3 d^3 + 4x^2 d^2 - [x^2 - 2(a + 2N)x + a^2 - 2] x d + [(a + 2N)x - a^2]"


@dataclass(frozen=True)
class GradedOperators:
    case: EdgeCase
    operators: tuple[DiffOperator, ...]
    grading: str
    family: BasisFamily
    params: tuple[str, ...]
    source: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "case": self.case.key,
            "grading": self.grading,
            "family": self.family.id,
            "params": list(self.params),
            "operators": [op.to_json() for op in self.operators],
        }


def family_for(case: EdgeCase) -> BasisFamily:
    if case.ensemble == GAUSSIAN or case.edge != HARD:
        return AIRY3 if case.beta == 2 else AIRY5.with_nu(1 if case.beta == 1 else 0)
    return BESSEL3 if case.beta == 2 else BESSEL5.with_nu(1 if case.beta == 1 else 0)


def _parse_all(texts, beta=None) -> tuple[DiffOperator, ...]:
    b = Fraction(beta) if beta is not None else None
    return tuple(parse_operator(t, b) for t in texts)


@lru_cache(maxsize=None)
def get_operators(case: EdgeCase) -> GradedOperators:
    """Operators as graded in the case's natural expansion variable."""
    fam = family_for(case)
    if case.ensemble == GAUSSIAN:
        if case.beta == 2:
            return GradedOperators(case, _parse_all(_GUE), "N^(-2/3)", fam, (), _GUE)
        return GradedOperators(case, _parse_all(_G_BETA, case.beta), "N'^(-2/3), N' = N + (beta-2)/(2 beta)",
                               fam, (), _G_BETA)
    if case.beta == 2:
        if case.edge == SOFT:
            return GradedOperators(case, _parse_all(_LUE_SOFT), "(2N')^(-2/3), N' = N + a/2", fam, ("A",), _LUE_SOFT)
        if case.edge == SOFT_RIGHT:
            return GradedOperators(case, _parse_all(_LUE_SR), "N^^(-2/3), N^ = 2 sqrt(gamma) tau N", fam, ("T",),
                                   _LUE_SR)
        if case.edge == SOFT_LEFT:
            ops = tuple(op.subs_param("T", -GEN["T"]) for op in _parse_all(_LUE_SR))
            return GradedOperators(case, ops, "N^(-2/3) with tau_l", fam, ("T",), _LUE_SL)
        return GradedOperators(case, _parse_all(_LUE_HARD), "(4N')^(-2), N' = N + a/2", fam, ("A",), _LUE_HARD)
    if case.edge == SOFT_RIGHT:
        return GradedOperators(case, _parse_all(_LBE_SR, case.beta), "(sqrt(beta) N^')^(-2/3)", fam, ("T",), _LBE_SR)
    if case.edge == HARD:
        return GradedOperators(case, _parse_all(_LBE_HARD), "(2 sqrt(beta) N^_h)^(-2)", fam, ("Ã",), _LBE_HARD)
    raise OutOfScope(case.key)


def get_operators_beta(beta: int, edge: str = SOFT) -> GradedOperators:
    if beta == 6:
        raise OutOfScope("beta = 6 operators are stored as data only (first sub-leading term)")
    return get_operators(EdgeCase(GAUSSIAN, beta, edge))


def tilde_operators_gaussian() -> tuple[DiffOperator, ...]:
    return _parse_all(_G_TILDE)


def sl_operators_printed() -> tuple[DiffOperator, ...]:
    return _parse_all(_LUE_SL)


# --- beta rescaling ---------------------------------------------------------------

def _rational_cbrt_power(beta: int, e: int) -> Fraction:
    """beta**(e/3) when rational, else IrrationalScaling."""
    val = Fraction(beta) ** e
    num, den = val.numerator, val.denominator
    rn, rd = round(num ** (1 / 3)), round(den ** (1 / 3))
    for cn in (rn - 1, rn, rn + 1):
        for cd in (rd - 1, rd, rd + 1):
            if cn > 0 and cd > 0 and cn ** 3 == num and cd ** 3 == den:
                return Fraction(cn, cd)
    raise IrrationalScaling(f"{beta}^({e}/3) is irrational")


def beta_rescale(op: DiffOperator, beta: int, extra_thirds: int, factor: Fraction = Fraction(1)) -> DiffOperator:
    """factor * beta^(extra_thirds/3) * op with y -> beta^(-1/3) y.

    A term c y^m d^k picks up beta^((k - m + extra_thirds)/3); every such
    power must be rational for the result to be exact.
    """
    out: dict[int, ParamPoly] = {}
    for k, p in op.terms.items():
        coeffs = {}
        for m, c in p.coeffs.items():
            coeffs[m] = c * const(factor * _rational_cbrt_power(beta, k - m + extra_thirds))
        out[k] = ParamPoly(p.variable, coeffs)
    return DiffOperator(out)


def scale_beta(case: EdgeCase) -> tuple[DiffOperator, ...]:
    """beta-independent rescaled operators in ỹ = beta^(1/3) y.

    Gaussian: 4^(k-1) beta^((k-2)/3) 𝒟_k(beta^(-1/3) ỹ).  Laguerre right
    soft edge: beta^((k-2)/3) 𝒟_k(beta^(-1/3) ỹ).
    """
    if case.beta == 2 or case.edge not in (SOFT, SOFT_RIGHT):
        raise CatalogError("beta rescaling applies to beta in {1, 4} soft edges")
    ops = get_operators(case).operators
    out = []
    for k, op in enumerate(ops):
        f = Fraction(4) ** (k - 1) if case.ensemble == GAUSSIAN else Fraction(1)
        out.append(beta_rescale(op, case.beta, k - 2, f))
    return tuple(out)


def normalise_leading(ops: tuple[DiffOperator, ...]) -> tuple[DiffOperator, ...]:
    """Divide all operators by the top coefficient of the first one."""
    top = ops[0].coeff(ops[0].order())
    if top.degree() != 0 or top.params:
        raise CatalogError("leading coefficient is not a rational constant")
    from .exactcore import to_fraction
    lc = to_fraction(top.coeff(0).LC)
    return tuple(op.scale(Fraction(1) / lc) for op in ops)


@lru_cache(maxsize=None)
def cascade_operators(case: EdgeCase) -> tuple[DiffOperator, ...]:
    """Operators with Σ_k 𝒟_k r_{j-k} = 0 for the stored correction terms.

    The correction terms may be graded in a variable that differs from the
    operators' own by a constant factor, and for beta in {1, 4} they are
    functions of ỹ = beta^(1/3) y.  The Laguerre hard edge with beta in {1, 4}
    has its terms stored as functions of y/2, so its operators are rewritten
    in that variable.
    """
    g = get_operators(case)
    ops = g.operators
    if case.ensemble == GAUSSIAN:
        if case.beta == 2:
            return (ops[0], ops[1].scale(4))
        return normalise_leading(scale_beta(case))
    if case.beta == 2:
        if case.edge == HARD:
            return (ops[0], ops[1].scale(Fraction(1, 16)))
        return ops
    if case.edge == SOFT_RIGHT:
        return normalise_leading(scale_beta(case))
    # hard edge, beta in {1, 4}: r_j(y) = R_j(2y), y = z/2
    return tuple(op.substitute_scale(Fraction(1, 2)) for op in ops)


# --- scaling maps -------------------------------------------------------------------

@dataclass(frozen=True)
class ScalingMap:
    case: EdgeCase
    center: str
    scale: str
    expansion_variable: str
    nprime: str
    correction_grading: str
    evaluate: Callable = field(compare=False, repr=False)

    def values(self, N, a=None, gamma=None, dps: int = 40) -> dict:
        import mpmath
        with mpmath.workdps(dps):
            return self.evaluate(mpmath.mpf(N), None if a is None else mpmath.mpf(a),
                                 None if gamma is None else mpmath.mpf(gamma))

    def to_json(self) -> dict:
        return {"case": self.case.key, "center": self.center, "scale": self.scale,
                "expansion_variable": self.expansion_variable, "nprime": self.nprime,
                "correction_grading": self.correction_grading}


def tau_right(gamma):
    import mpmath
    s = mpmath.sqrt(gamma)
    return 4 / (s + 1 / s + 2)


def tau_left(gamma):
    import mpmath
    s = mpmath.sqrt(gamma)
    if s <= 1:
        raise CatalogError("the left soft edge requires gamma > 1")
    return 4 / (s + 1 / s - 2)


def _eval_gaussian(beta):
    def f(N, a, gamma):
        import mpmath
        Np = N + mpmath.mpf(beta - 2) / (2 * beta)
        c = mpmath.sqrt(2 * Np)
        s = 1 / (mpmath.sqrt(2) * Np ** (mpmath.mpf(1) / 6))
        if beta == 2:
            eps = Np ** (-mpmath.mpf(2) / 3) / 4
        else:
            eps = (8 * mpmath.sqrt(beta) * Np) ** (-mpmath.mpf(2) / 3)
        return {"nprime": Np, "center": c, "scale": s, "eps": eps, "prefactor": s}
    return f


def _eval_lue_soft(N, a, gamma):
    import mpmath
    Np = N + a / 2
    s = 2 * (2 * Np) ** (mpmath.mpf(1) / 3)
    return {"nprime": Np, "center": 4 * Np, "scale": s, "eps": (2 * Np) ** (-mpmath.mpf(2) / 3), "prefactor": s}


def _eval_lue_sr(N, a, gamma):
    import mpmath
    g = gamma
    sq = mpmath.sqrt(g)
    tau = tau_right(g)
    c = (1 + sq) ** 2 * N
    s = g ** (-mpmath.mpf(1) / 6) * (1 + sq) ** (mpmath.mpf(4) / 3) * N ** (mpmath.mpf(1) / 3)
    nhat = 2 * sq * tau * N
    return {"nprime": N, "center": c, "scale": s, "eps": nhat ** (-mpmath.mpf(2) / 3), "prefactor": s,
            "tau": tau, "nhat": nhat, "a": (g - 1) * N}


def _eval_lue_sl(N, a, gamma):
    import mpmath
    g = gamma
    sq = mpmath.sqrt(g)
    tau = tau_left(g)
    c = (1 - sq) ** 2 * N
    s = g ** (-mpmath.mpf(1) / 6) * (sq - 1) ** (mpmath.mpf(4) / 3) * N ** (mpmath.mpf(1) / 3)
    nhat = 2 * sq * tau * N
    return {"nprime": N, "center": c, "scale": -s, "eps": nhat ** (-mpmath.mpf(2) / 3), "prefactor": s,
            "tau": tau, "nhat": nhat, "a": (g - 1) * N}


def _eval_lue_hard(N, a, gamma):
    Np = N + a / 2
    return {"nprime": Np, "center": 0, "scale": 1 / (4 * Np), "eps": Np ** -2, "prefactor": 1 / (4 * Np)}


def _eval_lbe_hard(beta):
    def f(N, a, gamma):
        Np = N + (a - 1) / 2 if beta == 1 else N + (a + 1) / 4
        return {"nprime": Np, "center": 0, "scale": 1 / (4 * Np), "eps": (2 * beta ** 0.5 * Np) ** -2,
                "prefactor": 1 / (4 * Np)}
    return f


def _eval_lbe_sr(beta):
    def f(N, a, gamma):
        import mpmath
        d = _eval_lue_sr(N, a, gamma)
        Np = N + (a if a is not None else 0) * 0
        d["eps"] = (mpmath.sqrt(beta) * d["nhat"]) ** (-mpmath.mpf(2) / 3)
        d["nprime"] = Np
        return d
    return f


@lru_cache(maxsize=None)
def scaling_map(case: EdgeCase) -> ScalingMap:
    if case.ensemble == GAUSSIAN:
        if case.beta == 2:
            return ScalingMap(case, "sqrt(2N)", "1/(sqrt(2) N^(1/6))", "N^(-2/3)", "N",
                              "4^(-j) N^(-2j/3)", _eval_gaussian(2))
        np_ = "N - 1/2" if case.beta == 1 else "N + 1/4"
        return ScalingMap(case, "sqrt(2N')", "1/(sqrt(2) N'^(1/6))", "(8 sqrt(beta) N')^(-2/3)", np_,
                          "(8 sqrt(beta) N')^(-2j/3), argument beta^(1/3) y", _eval_gaussian(case.beta))
    if case.beta == 2:
        if case.edge == SOFT:
            return ScalingMap(case, "4N'", "2 (2N')^(1/3)", "(2N')^(-2/3)", "N + a/2", "(2N')^(-2j/3)",
                              _eval_lue_soft)
        if case.edge == SOFT_RIGHT:
            return ScalingMap(case, "(1 + sqrt(gamma))^2 N", "gamma^(-1/6) (1 + sqrt(gamma))^(4/3) N^(1/3)",
                              "N^^(-2/3)", "N", "N^^(-2j/3)", _eval_lue_sr)
        if case.edge == SOFT_LEFT:
            return ScalingMap(case, "(1 - sqrt(gamma))^2 N", "-gamma^(-1/6) (sqrt(gamma) - 1)^(4/3) N^(1/3)",
                              "N^^(-2/3)", "N", "N^^(-2j/3)", _eval_lue_sl)
        return ScalingMap(case, "0", "1/(4N')", "(4N')^(-2)", "N + a/2", "N'^(-2j)", _eval_lue_hard)
    if case.edge == HARD:
        np_ = "N + (a - 1)/2" if case.beta == 1 else "N + (a + 1)/4"
        return ScalingMap(case, "0", "1/(4N^_h)", "(2 sqrt(beta) N^_h)^(-2)", np_,
                          "(2 sqrt(beta) N^_h)^(-2j), argument y/2", _eval_lbe_hard(case.beta))
    return ScalingMap(case, "(1 + sqrt(gamma))^2 N", "gamma^(-1/6) (1 + sqrt(gamma))^(4/3) N^(1/3)",
                      "(sqrt(beta) N^)^(-2/3)", "N", "(sqrt(beta) N^)^(-2j/3), argument beta^(1/3) y",
                      _eval_lbe_sr(case.beta))


# --- integrity ----------------------------------------------------------------------

def check_grading(case: EdgeCase) -> list[str]:
    """Substitute the scaling map into the unscaled operator and compare with
    the catalogued graded operators.  Returns a list of mismatches (empty
    when consistent).  Available for the four beta = 2 Laguerre regimes and
    the GUE soft edge."""
    from . import _grading
    return _grading.check(case)


ALL_CASES = (GUE_SOFT, GOE_SOFT, GSE_SOFT, LUE_SOFT, LUE_SOFT_RIGHT, LUE_SOFT_LEFT, LUE_HARD,
             EdgeCase(LAGUERRE, 1, HARD), EdgeCase(LAGUERRE, 4, HARD),
             EdgeCase(LAGUERRE, 1, SOFT_RIGHT), EdgeCase(LAGUERRE, 4, SOFT_RIGHT))


def dump_catalog() -> dict:
    out = {}
    for case in ALL_CASES:
        g = get_operators(case)
        out[case.key] = {
            "graded": g.to_json(),
            "cascade": [op.to_json() for op in cascade_operators(case)],
            "scaling": scaling_map(case).to_json(),
        }
    out["extra"] = {"G6_D1": parse_operator(G6_D1).to_json()}
    return out


def dump_catalog_text() -> str:
    lines = []
    for case in ALL_CASES:
        g = get_operators(case)
        lines.append(f"[{case.label}] beta={case.beta} grading {g.grading} family {g.family.id}")
        for k, op in enumerate(g.operators):
            lines.append(f"  D{k} = {op}")
    return "\n".join(lines)


def compare_catalog(data: dict) -> list[str]:
    """Term-by-term differences between a dumped catalog and the built-in one."""
    ref = dump_catalog()
    diffs = []
    for key in sorted(set(ref) | set(data)):
        if key not in data:
            diffs.append(f"{key}: missing")
            continue
        if key not in ref:
            diffs.append(f"{key}: unknown case")
            continue
        a, b = ref[key], data[key]
        if a == b:
            continue
        for part in sorted(set(a) | set(b)):
            if a.get(part) != b.get(part):
                diffs.append(f"{key}/{part}: expected {json.dumps(a.get(part), sort_keys=True)[:200]}"
                             f" got {json.dumps(b.get(part), sort_keys=True)[:200]}")
    return diffs
