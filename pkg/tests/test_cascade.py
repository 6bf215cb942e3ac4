import pytest

from edgecascade import opcatalog as oc
from edgecascade.basisalg import element, parse_poly
from edgecascade.cascade import (
    ALIASES, LUE_HARD_R2_PRINTED, LUE_SOFT_R2_PRINTED, RELATIONS, AnsatzInsufficient, AnsatzSpec, CascadeError,
    check_relation, decompose_homogeneous, default_ansatz, get_table, lbe_hard_particular, residual, solve_next,
)

LBE_HARD = [oc.EdgeCase(oc.LAGUERRE, 1, oc.HARD), oc.EdgeCase(oc.LAGUERRE, 4, oc.HARD)]
ALL = list(oc.ALL_CASES)


@pytest.mark.parametrize("case", ALL, ids=lambda c: f"{c.label}-b{c.beta}")
def test_stored_rows_have_zero_residual(case):
    table = get_table(case)
    for j in table.rows:
        assert table.residual(j).is_zero(), (case.label, j)


@pytest.mark.parametrize("case", [oc.GUE_SOFT, oc.LUE_HARD, oc.LUE_SOFT_RIGHT], ids=lambda c: c.label)
def test_perturbed_row_is_detected(case):
    table = get_table(case)
    rows = dict(table.rows)
    fam = rows[1].family
    rows[1] = rows[1] + element(fam, "y/1000")
    assert not residual(oc.cascade_operators(case), rows, 1).is_zero()


def test_printed_variants_fail():
    fam = oc.family_for(oc.LUE_SOFT)
    rows = dict(get_table(oc.LUE_SOFT).rows)
    rows[2] = element(fam, *LUE_SOFT_R2_PRINTED)
    assert not residual(oc.cascade_operators(oc.LUE_SOFT), rows, 2).is_zero()
    rows = dict(get_table(oc.LUE_HARD).rows)
    rows[2] = element(oc.family_for(oc.LUE_HARD), *LUE_HARD_R2_PRINTED)
    assert not residual(oc.cascade_operators(oc.LUE_HARD), rows, 2).is_zero()


@pytest.mark.parametrize("case", [oc.GUE_SOFT, oc.LUE_SOFT, oc.LUE_HARD, oc.LUE_SOFT_RIGHT, oc.LUE_SOFT_LEFT],
                         ids=lambda c: c.label)
@pytest.mark.parametrize("j", [1, 2])
def test_solve_next_reproduces_rows(case, j):
    table = get_table(case)
    res = solve_next(case, {k: table[k] for k in range(j)}, j)
    assert res.nullspace_dim == 0
    assert res.particular == table[j]


def test_gue_third_order_has_one_dimensional_nullspace():
    table = get_table(oc.GUE_SOFT)
    res = solve_next(oc.GUE_SOFT, table.rows, 3)
    assert res.nullspace_dim == 1
    assert res.nullspace[0] == table[0]
    # the particular solution still satisfies the cascade
    rows = dict(table.rows)
    rows[3] = res.particular
    assert residual(oc.cascade_operators(oc.GUE_SOFT), rows, 3).is_zero()


def test_ansatz_escalation_and_failure():
    table = get_table(oc.GUE_SOFT)
    tight = AnsatzSpec((0, 0, 0))
    res = solve_next(oc.GUE_SOFT, {0: table[0]}, 1, tight, max_escalations=3)
    assert res.escalations >= 1 and res.particular == table[1]
    with pytest.raises(AnsatzInsufficient):
        solve_next(oc.GUE_SOFT, {0: table[0]}, 1, tight, max_escalations=0)


def test_default_ansatz_mod_three():
    spec = default_ansatz(oc.GUE_SOFT, 1)
    assert spec.exponents(0) == [2, 5]
    assert spec.exponents(1) == [1, 4]
    assert spec.exponents(2) == [0, 3]


@pytest.mark.parametrize("rel_id", sorted(RELATIONS))
def test_relations(rel_id):
    ok, diff = check_relation(rel_id)
    assert ok, diff


def test_relation_aliases_and_unknown():
    for alias in ALIASES:
        assert check_relation(alias)[0]
    with pytest.raises(CascadeError):
        check_relation("no-such-relation")


@pytest.mark.parametrize("case", LBE_HARD, ids=lambda c: f"b{c.beta}")
def test_decompose_homogeneous(case):
    t = get_table(case)
    C, P = decompose_homogeneous(t[1], t[0])
    assert C == parse_poly("(1 - A)/4").coeff(0)
    assert P == lbe_hard_particular()


def test_table_json_and_text():
    t = get_table(oc.LUE_HARD)
    data = t.to_json()
    assert data["rows"]["2"]["source"].startswith("published")
    assert "j=2" in t.to_text()
