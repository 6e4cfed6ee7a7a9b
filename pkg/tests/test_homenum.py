import itertools

import pytest
from hypothesis import given, settings, strategies as st

from germcovers.braid import BraidWord, SingLabel, act, braid_monodromy
from germcovers.homenum import (
    HomTuple,
    IncompatibleBraid,
    LEMMAS,
    MonodromyDataset,
    UnknownLemma,
    classify_conjugacy,
    commutator_relation,
    cusp_axis_braids,
    enumerate_homs,
    hurwitz_orbits,
    lemma_instances,
    lemma_presentation,
    max_relator_length,
    verify_lemma,
)
from germcovers.perm import Permutation, generate, is_transitive, symmetric_group
from germcovers.present import tuple_satisfies, zvk_presentation


def brute_force(p, ds, transitive=True):
    pools = [[g for g in symmetric_group(ds.d).elements if c is None or g.cycle_type() == c] for c in ds.classes]
    out = []
    for t in itertools.product(*pools):
        if tuple_satisfies(p, t) and (not transitive or is_transitive(list(t), ds.d)):
            out.append(HomTuple(tuple(t)))
    return sorted(out)


@pytest.mark.parametrize(
    "label,classes",
    [
        (SingLabel("A", (3,)), [(2, 2), (2,)]),
        (SingLabel("A", (2,)), [(2,), (2,)]),
        (SingLabel("D", (5,)), [(2, 2), (2,), (2,)]),
        (SingLabel("T3NB", (1, 1)), [(2,), (2,), (2,)]),
    ],
)
def test_enumeration_matches_brute_force(label, classes):
    p = zvk_presentation(braid_monodromy(label))
    ds = MonodromyDataset.of(4, classes)
    assert enumerate_homs(p, ds) == brute_force(p, ds)


def test_dataset_parse_and_validation():
    ds = MonodromyDataset.parse("3|*|2,2", 4)
    assert ds.classes == ((3, 1), None, (2, 2))
    assert str(ds) == "3,1|*|2,2"
    with pytest.raises(ValueError):
        MonodromyDataset.of(3, [(2, 2)])


def test_enumeration_rejects_mismatched_dataset():
    with pytest.raises(ValueError):
        enumerate_homs(commutator_relation(4), MonodromyDataset.of(4, [(2,)]))


@pytest.mark.parametrize("k", range(1, 13))
def test_commutator_relation_solutions(k):
    sols = enumerate_homs(commutator_relation(k), MonodromyDataset.of(4, [(3,), (2,)]))
    classes = classify_conjugacy(sols)
    if k % 4 == 0:
        assert len(classes) == 1 and classes[0].label == "S4"
    else:
        assert sols == []


def test_conjugacy_classes_partition_solutions():
    p = zvk_presentation(braid_monodromy(SingLabel("D", (5,))))
    sols = enumerate_homs(p, MonodromyDataset.of(4, [(2, 2), (2,), (2,)]))
    classes = classify_conjugacy(sols)
    assert sum(c.size for c in classes) == len(sols)
    g = Permutation.parse("(1,2,3,4)", 4)
    for c in classes:
        assert c.representative.conjugate(g) in c.members


@given(st.integers(0, 7), st.permutations([1, 2, 3, 4]))
@settings(max_examples=30, deadline=None)
def test_solution_sets_are_conjugation_invariant(n, g):
    g = Permutation.from_images(g)
    p = zvk_presentation(braid_monodromy(SingLabel("T3PQ_even", (2, 2 * n))))
    sols = set(enumerate_homs(p, MonodromyDataset.of(4, [(2,)] * 3)))
    assert {t.conjugate(g) for t in sols} == sols


def test_hurwitz_orbits_refine_to_classes():
    p = lemma_presentation("cl181", m=1, n=3)
    sols = enumerate_homs(p, MonodromyDataset.of(4, [(2,)] * 3))
    orbits = hurwitz_orbits(sols, cusp_axis_braids())
    classes = classify_conjugacy(sols)
    assert 1 <= len(orbits) <= len(classes)
    members = [set(o.members) for o in orbits]
    assert sum(len(m) for m in members) == len(sols)


def test_hurwitz_orbit_members_are_images():
    p = lemma_presentation("cl8", m=1, n=1)
    sols = enumerate_homs(p, MonodromyDataset.of(4, [(2,)] * 3))
    sset = set(sols)
    for b in cusp_axis_braids():
        for t in sols:
            assert HomTuple(act(b, t.images)) in sset


def test_hurwitz_rejects_incompatible_braid():
    p = lemma_presentation("cl8", m=1, n=1)
    sols = enumerate_homs(p, MonodromyDataset.of(4, [(2,)] * 3))
    with pytest.raises(IncompatibleBraid):
        hurwitz_orbits(sols, [BraidWord.parse("a2", 3)])


def test_lemma_registry():
    assert set(LEMMAS) == {"PropI2", "cl7", "cl8", "cl181", "AnD4", "Lem", "Lemx"}
    with pytest.raises(UnknownLemma):
        verify_lemma("nope")
    with pytest.raises(ValueError):
        verify_lemma("cl8", m=1)
    rep = verify_lemma("Lem", k=1)
    assert rep.passed and rep.labels == ["D4"]
    assert rep.to_json()["pass"] is True


def test_tangent_cusp_solution_window():
    found = [n for n in range(0, 9) if verify_lemma("cl8", m=1, n=n).solutions]
    assert found == [1, 4, 7]


def test_lemma_instances_respect_length_bound():
    inst = lemma_instances(60)
    assert inst
    for lid, kw in inst:
        assert max_relator_length(lemma_presentation(lid, **kw)) <= 60
