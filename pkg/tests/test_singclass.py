from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from germcovers.braid import SingLabel
from germcovers.series import INFINITE_UP_TO_N, MPoly, TruncSeries
from germcovers.singclass import (
    all_labels,
    branches_of_equation,
    classify,
    classify_equation,
    classify_stable,
    defining_equation,
    intersection_multiplicity,
    invariant_of,
    model_curve_branches,
    normalize_branch,
    predicted_invariant,
    reference_model,
)


def L(text):
    return SingLabel.parse(text)


@pytest.mark.parametrize("label", all_labels(4), ids=str)
def test_reference_model_matches_closed_form(label):
    inv = reference_model(label)
    assert inv == predicted_invariant(label)
    assert classify(inv).matches(label)


@pytest.mark.parametrize(
    "a,b", [("E_6", "T3[n-1,n:3]"), ("E_7", "T3(1,1)"), ("E_8", "T3(1,2)")]
)
def test_alias_identities(a, b):
    assert reference_model(L(a)) == reference_model(L(b))


@pytest.mark.parametrize(
    "text,label",
    [
        ("w^2 - z^3", "A_2"),
        ("w^2 - z^2", "A_1"),
        ("w", "A_0"),
        ("w*(w^2 - z^3)", "E_6"),
        ("w^3 - z^4", "E_7"),
        ("w^3 - z^5", "E_8"),
        ("z*(w^2 - z^3)", "D_5"),
        ("w*((w - z)^2 - z^5)", "D_7"),
        ("(w^2 - z^3)*(z^2 - w^5)", "T4[2,4]"),
    ],
)
def test_classify_equations(text, label):
    c, _ = classify_equation(MPoly.parse(text), 48)
    assert c.matches(L(label))


def test_cusp_with_tangent_line_subscripts():
    lab = SingLabel("T3PQ_even", (2, 1))
    c, _, _ = classify_stable(defining_equation(lab))
    assert c.matches(lab)
    assert lab.subscript() == (5, 4)


def test_normalize_reparametrizes_and_extracts_degree():
    X = TruncSeries({4: Fraction(1)}, None)
    Y = TruncSeries({6: Fraction(1), 10: Fraction(1)}, None)
    b, delta = normalize_branch(X, Y)
    assert delta == 2
    assert (b.a, b.characteristic()) == (2, (3,))


@given(st.integers(1, 3), st.integers(-3, 3).filter(lambda c: c != 0), st.integers(2, 5))
@settings(max_examples=30, deadline=None)
def test_characteristic_is_reparametrization_invariant(k, c, q):
    # t -> t + c t^(k+1) changes the parametrization, not the branch.
    prec = 24
    t = TruncSeries({1: Fraction(1), k + 1: Fraction(c)}, prec)
    X = TruncSeries({2: Fraction(1)}, None).compose(t)
    Y = TruncSeries({2 * q + 1: Fraction(1)}, None).compose(t)
    b, delta = normalize_branch(X, Y)
    assert delta == 1
    assert (b.a, b.characteristic()) == (2, (2 * q + 1,))


@pytest.mark.parametrize("label", [L("D_6"), L("T3[5,4]"), L("T4[2,4]"), L("A_5"), L("T3[n-1,n:6]")], ids=str)
def test_intersection_is_symmetric(label):
    bs = model_curve_branches(label)
    for i, x in enumerate(bs):
        for y in bs[i + 1:]:
            assert intersection_multiplicity(x, y) == intersection_multiplicity(y, x)
        assert intersection_multiplicity(x, x) is INFINITE_UP_TO_N


@given(st.integers(-3, 3), st.integers(-3, 3))
@settings(max_examples=20, deadline=None)
def test_classification_survives_coordinate_change(a, b):
    # (z, w) -> (z + a w, w + b z^2) is a local biholomorphism.
    f = MPoly.parse("(w^2 - z^3)*(w - z^2)")
    z = MPoly.parse(f"z + ({a})*w")
    w = MPoly.parse(f"w + ({b})*z^2")
    g = _compose(f, z, w)
    c1, _ = classify_equation(f, 48)
    c2, _, _ = classify_stable(g)
    assert str(c1) == str(c2)


def _compose(f, zs, ws):
    out = MPoly(("z", "w"))
    for (i, j), c in f.terms.items():
        out = out + zs ** i * ws ** j * MPoly.const(("z", "w"), c)
    return out


def test_stable_classification_reports_truncation():
    c, inv, N = classify_stable(MPoly.parse("(w^2 - z^3)^2 - z^7"), N=8)
    assert N >= 8
    assert c.label is None or inv == predicted_invariant(c.label)
    c2, inv2 = classify_equation(MPoly.parse("(w^2 - z^3)^2 - z^7"), N + 4)
    assert inv2 == inv
