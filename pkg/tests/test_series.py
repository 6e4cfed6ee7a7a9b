from fractions import Fraction

import pytest
import sympy
from sympy.polys.subresultants_qq_zz import sylvester
from hypothesis import given, settings, strategies as st

from oracles import PUISEUX_CORPUS, follow_roots, numeric_terms
from germcovers.series import (
    INFINITE_UP_TO_N,
    MPoly,
    NotAtOrigin,
    ParseError,
    PuiseuxBranch,
    QuadNumber,
    TruncSeries,
    TruncationTooSmall,
    UnsupportedCoefficientField,
    field_sqrt,
    hessian,
    jacobian,
    newton_puiseux,
    resultant,
    squarefree_factor,
    substitute,
    vanishing_order,
)

z, w = sympy.symbols("z w")

small_polys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-4, 4), max_size=5
).map(lambda d: MPoly(("z", "w"), {k: Fraction(v) for k, v in d.items() if v}))

series = st.dictionaries(st.integers(0, 6), st.integers(-3, 3), max_size=5).map(
    lambda d: TruncSeries({k: Fraction(v) for k, v in d.items() if v}, 10)
)


def S(p):
    return sympy.expand(p.to_sympy())


def test_parse_and_print():
    f = MPoly.parse("(w - z)^2 - 3/2*z^5")
    assert sympy.expand(S(f) - ((w - z) ** 2 - sympy.Rational(3, 2) * z ** 5)) == 0
    g = MPoly.parse(str(f))
    assert g == f
    with pytest.raises(ParseError):
        MPoly.parse("z**")
    with pytest.raises(ParseError):
        MPoly.parse("x + 1")


@given(small_polys, small_polys)
def test_ring_operations_match_sympy(f, g):
    assert sympy.expand(S(f * g) - S(f) * S(g)) == 0
    assert sympy.expand(S(f + g) - S(f) - S(g)) == 0
    assert sympy.expand(S(f ** 2) - S(f) ** 2) == 0


@given(small_polys, small_polys)
@settings(max_examples=30, deadline=None)
def test_resultant_matches_sympy(f, g):
    if f.degree("w") < 1 or g.degree("w") < 1:
        return
    # sympy.resultant can flip sign when trailing coefficients vanish, so the
    # Sylvester determinant is used as the reference.
    ours = S(resultant(f, g, "w"))
    ref = sylvester(S(f), S(g), w).det()
    assert sympy.expand(ours - ref) == 0


def test_jacobian_and_hessian():
    f1, f2 = MPoly.parse("z^2 + w"), MPoly.parse("z*w^3")
    assert S(jacobian(f1, f2)) == sympy.expand(2 * z * 3 * z * w ** 2 - w ** 3)
    assert S(hessian(MPoly.parse("z^3*w"))) == sympy.expand(6 * z * w * 0 - (3 * z ** 2) ** 2)


def test_squarefree_factor_drops_units_and_keeps_multiplicity():
    f = MPoly.parse("(1 + z)*w^3*(w - z^2)^2")
    got = squarefree_factor(f)
    assert sorted(k for _, k in got) == [2, 3]
    prod = sympy.Integer(1)
    for p, k in got:
        prod *= S(p) ** k
    assert sympy.expand(prod - w ** 3 * (w - z ** 2) ** 2) == 0


def test_quadratic_numbers():
    r = field_sqrt(Fraction(8))
    assert r * r == 8
    assert isinstance(r, QuadNumber)
    assert field_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    q = QuadNumber.make(Fraction(1), Fraction(2), 3)
    assert q * q.inverse() == 1
    with pytest.raises(UnsupportedCoefficientField):
        field_sqrt(QuadNumber.make(Fraction(1), Fraction(1), 2))


@given(series, series)
def test_series_product_is_commutative(a, b):
    assert a * b == b * a


@given(series)
def test_series_inverse(a):
    if a[0] == 0:
        return
    one = a * a.inverse()
    assert one[0] == 1 and all(one[k] == 0 for k in range(1, one.prec))


def test_truncation_is_tracked():
    a = TruncSeries({1: Fraction(1)}, 5)
    assert (a * a).prec == 6
    assert vanishing_order(TruncSeries({}, 7)) == INFINITE_UP_TO_N
    assert vanishing_order(TruncSeries({2: Fraction(1)}, 7)) == 2


def test_vertical_branches():
    f = MPoly.parse("z*(w^2 - z^3)")
    with pytest.raises(ValueError):
        newton_puiseux(f, 12)
    bs = newton_puiseux(f, 12, allow_vertical=True)
    assert len(bs) == 2
    assert any(b.param_index == 1 for b in bs)


def test_not_at_origin():
    with pytest.raises(NotAtOrigin):
        newton_puiseux(MPoly.parse("w - 1"), 8)


def test_unsupported_field_is_reported():
    with pytest.raises(UnsupportedCoefficientField):
        newton_puiseux(MPoly.parse("w^3 - 2*z^3"), 8)


def test_too_small_truncation():
    with pytest.raises(TruncationTooSmall):
        newton_puiseux(MPoly.parse("(w^2 - z^3)^2 - z^7"), 3)


@pytest.mark.parametrize("text", PUISEUX_CORPUS)
def test_corpus_against_root_following(text):
    f = MPoly.parse(text)
    N = 24
    bs = newton_puiseux(f, N)
    for b in bs:
        assert substitute(f, b).order_bound() >= N
    assert sorted(b.e for b in bs) == follow_roots(numeric_terms(f))


@pytest.mark.parametrize("text", PUISEUX_CORPUS[:8])
def test_branches_stable_in_truncation(text):
    f = MPoly.parse(text)
    a = newton_puiseux(f, 16)
    b = newton_puiseux(f, 20)
    assert sorted((x.e, x.coeff) for x in a) == sorted((x.e, x.coeff) for x in b)
    for x in a:
        y = next(y for y in b if (y.e, y.coeff, y.series.truncate(x.series.prec)) == (x.e, x.coeff, x.series))
        assert y is not None


def test_factor_multiplicities_are_python_ints():
    for _, k in squarefree_factor(MPoly.parse("w^2*(w - z^2)^3")):
        assert type(k) is int
