import csv
import io
import json
from fractions import Fraction

import pytest

from edgecascade import cascade
from edgecascade import opcatalog as oc
from edgecascade.basisalg import element
from edgecascade.numerics.convergence import convergence_study, predicted_order
from edgecascade.numerics.precision import PrecisionContext

YS = [-2, -1, 0, 1, 2]


def test_predicted_orders():
    assert predicted_order(oc.GUE_SOFT, 0) == Fraction(2, 3)
    assert predicted_order(oc.LUE_SOFT_RIGHT, 2) == Fraction(2)
    assert predicted_order(oc.LUE_HARD, 1) == 4


def test_report_formats():
    rep = convergence_study(oc.GUE_SOFT, 0, [50, 100], YS)
    rows = list(csv.reader(io.StringIO(rep.to_csv())))
    assert rows[0] == ["case", "N", "y", "residual", "fitted_order"]
    assert len(rows) == 1 + 2 * len(YS)
    assert rows[1][0] == "gue-soft"
    data = json.loads(rep.to_json())
    assert data["predicted_order"] == "2/3" and data["digits"] == 32
    assert len(data["residuals"]) == 2 * len(YS)
    assert rep.plot_data().count("# y =") == len(YS)
    # orders are printed at the target digits, no binary noise
    significant = data["aggregate_order"].lstrip("-0.").replace(".", "")
    assert len(significant) <= 32


def test_double_path_matches_multiprecision():
    hi = convergence_study(oc.GUE_SOFT, 1, [50, 100], YS)
    lo = convergence_study(oc.GUE_SOFT, 1, [50, 100], YS, ctx=PrecisionContext(16))
    assert abs(float(hi.aggregate) - float(lo.aggregate)) < 1e-6
    assert lo.digits == 8


def test_errors():
    with pytest.raises(ValueError):
        convergence_study(oc.GOE_SOFT, 0, [10, 20], YS)
    with pytest.raises(ValueError):
        convergence_study(oc.GUE_SOFT, 0, [10], YS)


def test_fixed_a_soft_edge_second_order():
    rep = convergence_study(oc.LUE_SOFT, 2, [50, 100, 200], [-2, -1, 1, 2], a=2)
    assert rep.within(0.1)


def test_printed_fixed_a_constant_breaks_the_order(monkeypatch):
    real = cascade.get_table

    def printed(case):
        t = real(case)
        if case != oc.LUE_SOFT:
            return t
        rows = dict(t.rows)
        rows[2] = element(oc.family_for(case), *cascade.LUE_SOFT_R2_PRINTED)
        return cascade.CorrectionTable(case, rows, t.sources, t.grading)
    monkeypatch.setattr(cascade, "get_table", printed)
    rep = convergence_study(oc.LUE_SOFT, 2, [50, 100, 200], [-2, -1, 1, 2], a=2)
    # the residual keeps the N^(-4/3) term
    assert abs(float(rep.aggregate) - 4 / 3) < 0.1


def test_left_soft_edge():
    rep = convergence_study(oc.LUE_SOFT_LEFT, 1, [50, 100, 200], YS, gamma=4)
    assert rep.within(0.2)
