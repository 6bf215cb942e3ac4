from fractions import Fraction

import mpmath
import pytest

from edgecascade import opcatalog as oc
from edgecascade.basisalg import parse_operator

GRADED = [oc.GUE_SOFT, oc.LUE_SOFT, oc.LUE_SOFT_RIGHT, oc.LUE_SOFT_LEFT, oc.LUE_HARD]


def test_gue_operators():
    g = oc.get_operators(oc.GUE_SOFT)
    assert g.operators[0] == parse_operator("d**3 - 4*y*d + 2")
    assert g.operators[1] == parse_operator("-(y**2*d - y)")
    assert g.grading == "N^(-2/3)"


@pytest.mark.parametrize("case", GRADED, ids=lambda c: c.label)
def test_grading_matches_raw_operator(case):
    assert oc.check_grading(case) == []


@pytest.mark.parametrize("edge", [oc.SOFT, oc.SOFT_RIGHT])
def test_beta_rescaling_is_beta_independent(edge):
    ens = oc.GAUSSIAN if edge == oc.SOFT else oc.LAGUERRE
    assert oc.scale_beta(oc.EdgeCase(ens, 1, edge)) == oc.scale_beta(oc.EdgeCase(ens, 4, edge))


def test_gaussian_rescaled_operators_match_tilde_form():
    assert oc.scale_beta(oc.GOE_SOFT) == oc.tilde_operators_gaussian()


def test_tau_zero_reduction():
    lag = oc.normalise_leading(oc.scale_beta(oc.EdgeCase(oc.LAGUERRE, 4, oc.SOFT_RIGHT)))
    gau = oc.normalise_leading(oc.scale_beta(oc.GSE_SOFT))
    assert all(l.subs_param("T", 0) == g for l, g in zip(lag, gau))


def test_left_edge_operators_match_printed():
    assert oc.get_operators(oc.LUE_SOFT_LEFT).operators == oc.sl_operators_printed()


def test_beta_six_data():
    op = parse_operator(oc.G6_D1)
    assert op.order() == 5
    assert op.coeff(5) == parse_operator("-42*y**2").coeff(0)
    with pytest.raises(oc.OutOfScope):
        oc.get_operators_beta(6)


def test_out_of_scope_cases():
    with pytest.raises(oc.OutOfScope):
        oc.EdgeCase(oc.GAUSSIAN, 3, oc.SOFT)
    with pytest.raises(oc.OutOfScope):
        oc.EdgeCase(oc.LAGUERRE, 1, oc.SOFT_LEFT)
    with pytest.raises(oc.CatalogError):
        oc.EdgeCase(oc.GAUSSIAN, 2, oc.HARD)
    with pytest.raises(oc.IrrationalScaling):
        oc.beta_rescale(parse_operator("d"), 2, 0)


def test_parse_case():
    assert oc.parse_case("gue-soft")[0] == oc.GUE_SOFT
    case, opts = oc.parse_case("lbe-hard:beta=4")
    assert case == oc.EdgeCase(oc.LAGUERRE, 4, oc.HARD) and opts == {"beta": Fraction(4)}
    assert oc.parse_case("lue-soft-right:gamma=4")[1] == {"gamma": Fraction(4)}
    with pytest.raises(oc.CatalogError):
        oc.parse_case("xue-soft")
    with pytest.raises(oc.CatalogError):
        oc.parse_case("lbe-hard")
    with pytest.raises(oc.OutOfScope):
        oc.parse_case("gbe-soft:beta=6")


@mpmath.workdps(40)
def test_scaling_maps():
    v = oc.scaling_map(oc.GUE_SOFT).values(100)
    assert abs(v["center"] - mpmath.sqrt(200)) < 1e-30
    assert abs(v["eps"] - mpmath.mpf(100) ** (-mpmath.mpf(2) / 3) / 4) < 1e-30
    h = oc.scaling_map(oc.LUE_HARD).values(10, a=2)
    assert h["nprime"] == 11 and abs(h["scale"] - mpmath.mpf(1) / 44) < 1e-30
    r = oc.scaling_map(oc.LUE_SOFT_RIGHT).values(10, gamma=4)
    assert abs(r["tau"] - mpmath.mpf(8) / 9) < 1e-30 and r["a"] == 30


def test_left_edge_needs_gamma_above_one():
    with pytest.raises(oc.CatalogError):
        oc.scaling_map(oc.LUE_SOFT_LEFT).values(10, gamma=1)
    assert oc.scaling_map(oc.LUE_SOFT_LEFT).values(10, gamma=4)["tau"] == 8


def test_catalog_dump_roundtrip():
    data = oc.dump_catalog()
    assert oc.compare_catalog(data) == []
    data[oc.LUE_HARD.key]["cascade"] = []
    assert any(d.startswith(oc.LUE_HARD.key) for d in oc.compare_catalog(data))
