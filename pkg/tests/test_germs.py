import pytest

from germcovers.braid import SingLabel
from germcovers.germs import (
    KLEIN_ORDER,
    MAIN_ROWS,
    MISPRINTED_ICOSAHEDRAL,
    REGISTRY,
    BadParams,
    FamilyId,
    build_family,
    check_klein_triple,
    expected_values,
    fmnk_polynomial,
    local_degree,
    main_items,
    parameter_grid,
    ramification,
    run_pipeline,
    verify_klein_identities,
    verify_row,
)
from germcovers.series import MPoly


def test_family_id_round_trip():
    for text in ("F4_3:n=0,m=1", "F4_1:n=2@theorem", "KLEIN:row=2_2,p=3", "F1_1", "Fmnk:m=1,n=2,k=1"):
        assert str(FamilyId.parse(text)) == text


@pytest.mark.parametrize(
    "text", ["F9_9", "F4_3:n=0", "F4_3:n=0,m=1,x=2", "F4_3:n=a,m=1", "KLEIN:p=2", "F4_3:n"]
)
def test_family_id_rejects_bad_input(text):
    with pytest.raises(BadParams):
        FamilyId.parse(text)


def test_out_of_range_parameters():
    with pytest.raises(BadParams):
        build_family(FamilyId("F3_1", (0,)))
    with pytest.raises(BadParams):
        build_family(FamilyId("F4_3", (0, 0)))


def test_all_rows_registered():
    assert set(MAIN_ROWS) <= set(REGISTRY)
    assert REGISTRY["F4_1"].variants == ("proof", "theorem")
    assert REGISTRY["F4_6"].variants == ("proof", "theorem")


@pytest.mark.parametrize(
    "fid,d",
    [
        (FamilyId("F1_1"), 4),
        (FamilyId("F2_1"), 4),
        (FamilyId("F3_1", (2,)), 4),
        (FamilyId("F4_5", (1, 1)), 4),
        (FamilyId("Fmnk", (1, 2, 1)), 4),
        (FamilyId("KLEIN", (KLEIN_ORDER.index("1"),)), 6),
    ],
    ids=str,
)
def test_degrees(fid, d):
    assert build_family(fid).d == d


def test_local_degree_is_intersection_number():
    assert local_degree(MPoly.parse("z^2 - w^3"), MPoly.parse("w")) == 2
    assert local_degree(MPoly.parse("z^2 + w^3"), MPoly.parse("z*w")) == 5


def test_fmnk_polynomial_small_case():
    f = MPoly.parse(fmnk_polynomial(1, 1, 1))
    assert f.total_degree() >= 3


def test_ramification_indices():
    g = build_family(FamilyId("F2_1"))
    rams = ramification(g, 12)
    assert sorted(r.e for r in rams) == [2, 2]


def test_pipeline_stability_and_dataset():
    g = build_family(FamilyId("F3_1", (1,)))
    a = run_pipeline(g)
    b = run_pipeline(g, a.N + 4)
    assert a.tb_invariant == b.tb_invariant
    assert str(a.dataset) == "2,1,1|2,2"


@pytest.mark.parametrize("fid", main_items(1, None, "proof"), ids=str)
def test_rows_at_smallest_parameters(fid):
    rep = verify_row(fid)
    assert rep.passed, rep.to_json()


def test_theorem_form_discrepancy_is_detected():
    rep = verify_row(FamilyId("F4_6", (2, 1), "theorem"))
    assert not rep.passed
    assert rep.TB.label == SingLabel("T3PQ_odd", (8,))


def test_wrong_expectation_fails():
    rep = verify_row(FamilyId("F2_1"), expected=(SingLabel("A", (1,)), "S4"))
    assert rep.tb_ok and not rep.g_ok and not rep.passed


def test_expected_values_table():
    assert expected_values(FamilyId("F4_1", (2,))) == (SingLabel("A", (15,)), "S4")
    assert expected_values(FamilyId("F4_4", (1, 1))) == (SingLabel("T3PQ_even", (6, 2)), "S4")
    assert expected_values(FamilyId("Fmnk", (2, 2, 1)))[1] == "A5"


def test_parameter_grid_caps_two_parameter_rows():
    assert max(max(p) for p in parameter_grid("F4_3", 3, 2)) == 2
    assert max(parameter_grid("F3_1", 3, 2)) == (3,)


def test_klein_identities():
    ids = verify_klein_identities()
    assert all(k.ok for k in ids)
    assert not check_klein_triple("icosahedral", MISPRINTED_ICOSAHEDRAL).ok


def test_unpipelined_klein_rows_are_not_recomputed():
    rep = verify_row(FamilyId.parse("KLEIN:row=12"))
    assert not rep.recomputed and rep.passed
    assert rep.to_json()["TB"] is None


@pytest.mark.parametrize("p", [2, 3, 4])
def test_klein_power_sum_row(p):
    rep = verify_row(FamilyId.parse(f"KLEIN:row=2_2,p={p}"))
    assert rep.TB.matches(SingLabel("A", (p - 1,)))


def test_report_schema():
    j = verify_row(FamilyId("F3_2", (1,))).to_json()
    assert set(j) == {
        "family", "params", "variant", "germ", "TR", "TB", "TB_invariant", "dataset", "groups",
        "group_method", "expected_TB", "expected_G", "truncation", "recomputed", "pass",
    }
    assert set(j["germ"]) == {"u", "v", "degree"}
