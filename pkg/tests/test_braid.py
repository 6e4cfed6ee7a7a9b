import pytest
from hypothesis import given, settings, strategies as st

from germcovers.braid import (
    BraidWord,
    FreeWord,
    SingLabel,
    UnsupportedLabel,
    act,
    automorphism_equal,
    boundary_word,
    braid_monodromy,
    full_twist,
    images,
    standard_tuple,
    strand_count,
)
from germcovers.perm import Permutation


def braids(m, max_len=8):
    letters = st.integers(1, m - 1).flatmap(lambda i: st.sampled_from([i, -i]))
    return st.lists(letters, max_size=max_len).map(lambda ls: BraidWord(m, tuple(ls)))


def perm_tuples(m, d=4):
    p = st.permutations(list(range(1, d + 1))).map(Permutation.from_images)
    return st.tuples(*[p] * m)


def a(i, m=3, k=1):
    return BraidWord.gen(i, m, k)


def test_free_word_reduction_and_parse():
    w = FreeWord.parse("g1 g2 g2^-1 g1^-1 g3")
    assert str(w) == "g3"
    assert FreeWord.parse("1").is_trivial()
    assert len(FreeWord.parse("g1^3 g2^-2")) == 5
    with pytest.raises(ValueError):
        FreeWord.parse("x1")


def test_braid_parse_and_str():
    b = BraidWord.parse("a1^2 a2^-1 a1", 3)
    assert str(b) == "a1^2 a2^-1 a1"
    assert len(b) == 4
    with pytest.raises(ValueError):
        BraidWord.parse("a3", 3)


def test_artin_generator_images():
    assert [str(w) for w in images(a(1))] == ["g1 g2 g1^-1", "g1", "g3"]


def test_braid_relations_and_far_commutation():
    assert automorphism_equal(a(1) * a(2) * a(1), a(2) * a(1) * a(2))
    assert automorphism_equal(a(1, 4) * a(3, 4), a(3, 4) * a(1, 4))
    assert not automorphism_equal(a(1) * a(2), a(2) * a(1))


@pytest.mark.parametrize("m", [3, 4])
def test_full_twist_is_central(m):
    D = full_twist(m)
    for i in range(1, m):
        assert automorphism_equal(D * a(i, m), a(i, m) * D)


def test_full_twist_is_conjugation_by_boundary():
    for m in (2, 3, 4):
        g = boundary_word(m)
        assert images(full_twist(m)) == tuple(g * x * g.inverse() for x in standard_tuple(m))


def test_cusp_axis_braid_identities():
    x = BraidWord.parse("a2 a1^2 a2", 3)
    assert automorphism_equal(x * a(1, 3, 2), full_twist(3))
    assert automorphism_equal(x * a(1), a(1) * x)


@given(braids(3), braids(3))
def test_action_composes(b1, b2):
    t = standard_tuple(3)
    assert act(b1 * b2, t) == act(b1, act(b2, t))


@given(braids(4))
def test_action_preserves_boundary_product(b):
    imgs = images(b)
    prod = FreeWord()
    for w in imgs:
        prod = prod * w
    assert prod == boundary_word(4)


@given(braids(3), perm_tuples(3))
@settings(max_examples=60)
def test_hurwitz_action_preserves_product_and_cycle_types(b, t):
    out = act(b, t)

    def prod(xs):
        r = xs[0]
        for x in xs[1:]:
            r = r * x
        return r

    assert prod(out) == prod(t)
    assert sorted(p.cycle_type() for p in out) == sorted(p.cycle_type() for p in t)


@given(braids(3))
def test_inverse_braid_is_trivial(b):
    assert automorphism_equal(b * b.inverse(), BraidWord(3, ()))


@pytest.mark.parametrize(
    "label,word",
    [
        (SingLabel("A", (3,)), "a1^4"),
        (SingLabel("D", (4,)), "a1 a2 a1 a2 a1 a2"),
    ],
)
def test_braid_table(label, word):
    expected = BraidWord.parse(word, strand_count(label))
    assert automorphism_equal(braid_monodromy(label), expected)


def test_braid_table_powers():
    D = full_twist(3)
    assert automorphism_equal(braid_monodromy(SingLabel("T3NB", (2, 1))), D ** 2 * BraidWord.parse("a1 a2", 3))
    assert automorphism_equal(braid_monodromy(SingLabel("T3PQ_even", (1, 2))), D * a(1, 3, 3))
    assert automorphism_equal(braid_monodromy(SingLabel("T3PQ_odd", (2,))), BraidWord.parse("a1 a2 a1", 3) ** 2)


def test_aliases_share_braids():
    assert braid_monodromy(SingLabel("E7")) == braid_monodromy(SingLabel("T3NB", (1, 1)))
    assert braid_monodromy(SingLabel("E6")) == braid_monodromy(SingLabel("T3PQ_odd", (3,)))


def test_t4_is_unsupported():
    with pytest.raises(UnsupportedLabel):
        braid_monodromy(SingLabel("T4", (1, 1)))


@pytest.mark.parametrize("text", ["A_3", "D_7", "E_6", "T3(2,1)", "T3[10,8]", "T3[n-1,n:5]", "T4[2,4]"])
def test_label_round_trip(text):
    assert str(SingLabel.parse(text)) == text


def test_label_validation():
    with pytest.raises(ValueError):
        SingLabel("D", (3,))
    with pytest.raises(ValueError):
        SingLabel.parse("T3[3,5]")
    assert SingLabel("T3PQ_even", (4, 2)).alt_subscript() == (18, 16)
