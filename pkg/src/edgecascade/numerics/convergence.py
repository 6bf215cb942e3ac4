"""Empirical convergence orders of truncated edge expansions."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .. import opcatalog as oc
from ..basisalg import eval_numeric
from . import kernels
from .density import finite_n_density
from .precision import PrecisionContext, default_context

NUMERIC_CASES = (oc.GUE_SOFT, oc.LUE_SOFT, oc.LUE_SOFT_RIGHT, oc.LUE_SOFT_LEFT, oc.LUE_HARD)


def predicted_order(case, j: int) -> Fraction:
    """Exponent of N' in the first omitted term."""
    if case.edge == oc.HARD:
        return Fraction(2 * (j + 1))
    return Fraction(2 * (j + 1), 3)


def _fit(xs: list[float], ys: list[float]) -> float:
    """Least-squares slope of ys against xs."""
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx


@dataclass
class StudyReport:
    case: str
    j: int
    Ns: list[int]
    ys: list[float]
    a: float | None
    gamma: float | None
    predicted: Fraction
    digits: int = 15
    # residuals and orders are mpmath numbers at the study's working precision
    residuals: dict[tuple[int, float], object] = field(default_factory=dict)
    nprime: dict[int, object] = field(default_factory=dict)
    per_y: dict[float, object] = field(default_factory=dict)
    pairwise: dict[float, list] = field(default_factory=dict)
    aggregate: object = math.nan

    @property
    def min_order(self) -> float:
        return min(self.per_y.values())

    @property
    def max_order(self) -> float:
        return max(self.per_y.values())

    def within(self, tol: float, use: str = "aggregate") -> bool:
        target = float(self.predicted)
        if use == "aggregate":
            return abs(float(self.aggregate) - target) <= tol
        return all(abs(float(v) - target) <= tol for v in self.per_y.values())

    def fmt(self, v) -> str:
        return mpmath.nstr(v, self.digits, min_fixed=-4, max_fixed=6)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["case", "N", "y", "residual", "fitted_order"])
        for (N, y), r in sorted(self.residuals.items()):
            w.writerow([self.case, N, f"{y:g}", self.fmt(r), self.fmt(self.per_y[y])])
        return buf.getvalue()

    def to_json(self) -> str:
        data = {
            "case": self.case, "j": self.j, "N": self.Ns, "y": self.ys, "a": self.a, "gamma": self.gamma,
            "digits": self.digits,
            "predicted_order": str(self.predicted), "aggregate_order": self.fmt(self.aggregate),
            "per_y_order": {f"{y:g}": self.fmt(v) for y, v in sorted(self.per_y.items())},
            "pairwise_order": {f"{y:g}": [self.fmt(x) for x in v] for y, v in sorted(self.pairwise.items())},
            "residuals": [[N, y, self.fmt(r)] for (N, y), r in sorted(self.residuals.items())],
        }
        return json.dumps(data, sort_keys=True, indent=2)

    def plot_data(self) -> str:
        """Whitespace-separated (log N', log|residual|) series per y."""
        lines = []
        for y in self.ys:
            lines.append(f"# y = {y:g}")
            for N in self.Ns:
                r = self.residuals[(N, y)]
                lines.append(f"{self.fmt(mpmath.log(self.nprime[N]))} {self.fmt(mpmath.log(abs(r))) if r else '-inf'}")
            lines.append("")
        return "\n".join(lines)


def scaled_density(case, N: int, y, a=0, gamma=None, ctx: PrecisionContext | None = None):
    ctx = ctx or default_context(N)
    with mpmath.workdps(ctx.working_digits):
        v = oc.scaling_map(case).values(N, a=a, gamma=gamma, dps=ctx.working_digits)
        x = v["center"] + v["scale"] * mpmath.mpf(y)
        a_eff = v.get("a", a)
        if ctx.double:
            xs = np.array([float(x)])
            raw = kernels.gue_density(N, xs) if case.ensemble == oc.GAUSSIAN else kernels.lue_density(N, float(a_eff), xs)
            return v["prefactor"] * mpmath.mpf(float(raw[0])), v
        return v["prefactor"] * finite_n_density(case, N, x, a=a_eff, ctx=ctx), v


def truncated_expansion(case, j: int, y, values: dict, a=0, dps: int = 40):
    from ..cascade import get_table
    table = get_table(case)
    tau = values.get("tau")
    a_b = a if case.edge == oc.HARD else None
    total = mpmath.mpf(0)
    with mpmath.workdps(dps):
        for k in range(j + 1):
            # fixed-a soft edge rows carry A = a² through polynomial coefficients only
            elem = table[k]
            if case.edge == oc.SOFT and elem.params():
                val = _eval_with_A(elem, y, a, dps)
            else:
                val = eval_numeric(elem, y, a=a_b, tau=tau, dps=dps)
            total += values["eps"] ** k * val
    return total


def _eval_with_A(elem, y, a, dps):
    from .special import basis_values
    with mpmath.workdps(dps + 10):
        y = mpmath.mpf(y)
        vals = basis_values(elem.family, y)
        params = {"A": mpmath.mpf(a) ** 2}
        return +sum(p.evaluate(y, params) * v for p, v in zip(elem.coeffs, vals) if not p.is_zero())


def convergence_study(case, j: int, Ns: list[int], ys: list[float], a=0, gamma=None,
                      ctx: PrecisionContext | None = None) -> StudyReport:
    if case not in NUMERIC_CASES:
        raise ValueError(f"no finite-N numerics for {case.key}")
    if len(Ns) < 2:
        raise ValueError("need at least two values of N")
    contexts = {N: ctx or default_context(N) for N in Ns}
    digits = min(c.target for c in contexts.values())
    rep = StudyReport(case.label, j, list(Ns), [float(y) for y in ys], a, gamma, predicted_order(case, j), digits)
    work = max(c.working_digits for c in contexts.values())
    for N in Ns:
        c = contexts[N]
        for y in rep.ys:
            dens, vals = scaled_density(case, N, y, a=a, gamma=gamma, ctx=c)
            approx = truncated_expansion(case, j, y, vals, a=a, dps=c.working_digits)
            with mpmath.workdps(work):
                rep.residuals[(N, y)] = dens - approx
            rep.nprime[N] = vals["nprime"]
    with mpmath.workdps(work):
        tiny = mpmath.mpf(10) ** (-2 * work)
        logn = [mpmath.log(rep.nprime[N]) for N in Ns]
        for y in rep.ys:
            logs = [mpmath.log(abs(rep.residuals[(N, y)]) or tiny) for N in Ns]
            rep.per_y[y] = -_fit(logn, logs)
            rep.pairwise[y] = [-(logs[i + 1] - logs[i]) / (logn[i + 1] - logn[i]) for i in range(len(Ns) - 1)]
        norms = [mpmath.log(mpmath.sqrt(sum(rep.residuals[(N, y)] ** 2 for y in rep.ys))) for N in Ns]
        rep.aggregate = -_fit(logn, norms)
    return rep
