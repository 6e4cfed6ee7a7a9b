import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from germcovers.braid import BraidWord, FreeWord, SingLabel, braid_monodromy
from germcovers.perm import Permutation, symmetric_table
from germcovers.present import (
    Presentation,
    a_presentation,
    as_permutations,
    cusp_axis_presentation,
    d_presentation,
    d_presentation_printed,
    hom_set_equivalent,
    satisfies,
    solution_set,
    t3nb_presentation,
    tangent_cusp_presentation,
    tangent_lines_presentation,
    tuple_satisfies,
    zvk_presentation,
)


def zvk(label):
    return zvk_presentation(braid_monodromy(label))


def test_zvk_drops_trivial_relators():
    p = zvk_presentation(BraidWord.parse("a2", 3))
    assert p.rank == 3
    assert p.dropped == 1
    assert len(p.relators) == 2


def test_cusp_group_in_s3_by_brute_force():
    # Every pair of transpositions satisfies the braid relation xyx = yxy.
    p = zvk(SingLabel("A", (2,)))
    T = symmetric_table(3)
    transp = [i for i, e in enumerate(T.elements) if e.cycle_type() == (2, 1)]
    for x, y in itertools.product(transp, transp):
        assert tuple_satisfies(p, as_permutations((x, y), 3))


def test_solution_set_matches_brute_force():
    p = zvk(SingLabel("A", (3,)))
    T = symmetric_table(3)
    brute = {
        (i, j)
        for i, j in itertools.product(range(T.size), repeat=2)
        if tuple_satisfies(p, as_permutations((i, j), 3))
    }
    assert solution_set(p, 3, reduce_first=False) == brute


@given(st.integers(0, 6), st.lists(st.integers(0, 23), min_size=3, max_size=3))
@settings(max_examples=60)
def test_table_and_direct_evaluation_agree(n, row):
    p = zvk(SingLabel("D", (n + 4,)))
    arr = np.array([row], dtype=np.int32)
    assert bool(satisfies(p, arr, 4)[0]) == tuple_satisfies(p, as_permutations(row, 4))


@pytest.mark.parametrize("n", range(0, 10))
def test_a_presentation(n):
    assert hom_set_equivalent(zvk(SingLabel("A", (n,))), a_presentation(n), 4)


@pytest.mark.parametrize("n", range(4, 9))
def test_d_presentation(n):
    assert hom_set_equivalent(zvk(SingLabel("D", (n,))), d_presentation(n), 4)


@pytest.mark.parametrize("k", [1, 2])
def test_three_relator_d_form(k):
    assert hom_set_equivalent(zvk(SingLabel("D", (2 * k + 5,))), d_presentation_printed(k), 4)
    assert not hom_set_equivalent(zvk(SingLabel("D", (2 * k + 3,))), d_presentation_printed(k, literal=True), 4)


@pytest.mark.parametrize("n,beta", [(n, b) for n in range(4) for b in (1, 2)])
def test_t3nb_presentation(n, beta):
    assert hom_set_equivalent(zvk(SingLabel("T3NB", (n, beta))), t3nb_presentation(n, beta), 4)


@pytest.mark.parametrize("n", range(2, 7))
def test_cusp_axis_presentation(n):
    assert hom_set_equivalent(zvk(SingLabel("T3PQ_odd", (n,))), cusp_axis_presentation(n), 4)


@pytest.mark.parametrize("e,n", [(2, 0), (2, 1), (4, 1), (6, 2)])
def test_tangent_cusp_presentation(e, n):
    assert hom_set_equivalent(zvk(SingLabel("T3PQ_even", (e, 2 * n))), tangent_cusp_presentation(e, n), 4)


@pytest.mark.parametrize("e,n", [(4, 1), (4, 2), (8, 1)])
def test_tangent_lines_presentation(e, n):
    assert hom_set_equivalent(zvk(SingLabel("T3PQ_even", (e, 2 * n - 1))), tangent_lines_presentation(e, n), 4)


def test_distinct_types_are_distinguished():
    assert not hom_set_equivalent(zvk(SingLabel("A", (1,))), zvk(SingLabel("A", (3,))), 4)


def test_rank_mismatch_and_degree_limit():
    with pytest.raises(ValueError):
        hom_set_equivalent(a_presentation(1), d_presentation(4), 4)
    with pytest.raises(ValueError):
        hom_set_equivalent(a_presentation(1), a_presentation(1), 7)


def test_presentation_str():
    p = Presentation.from_relations(2, [(FreeWord.parse("g1 g2"), FreeWord.parse("g2 g1"))])
    assert str(p) == "< g1 g2 | g2^-1 g1^-1 g2 g1 >"
    assert p.total_length() == 4
