from fractions import Fraction

import pytest

from zetastar.algebra import (
    INHOMOGENEOUS,
    NcPoly,
    check_word,
    composition_from_word,
    dmap,
    dmap_via_key_identity,
    gamma,
    h0_words,
    h1_words,
    in_h0,
    in_h1,
    parse_composition,
    weight,
    word_from_composition,
    words,
    z,
)
from zetastar.errors import (
    InvalidCompositionError,
    InvalidWordError,
    NotInH1Error,
    UndefinedWeightError,
)

P = NcPoly.parse
zw = NcPoly.zword


@pytest.mark.parametrize("comp, word", [((), ""), ((2,), "xy"), ((3, 1), "xxyy"), ((1, 1, 2), "yyxy")])
def test_word_from_composition(comp, word):
    assert word_from_composition(comp) == word
    assert composition_from_word(word) == comp


def test_unit_word_spellings():
    assert check_word("1") == ""
    assert composition_from_word("1") == ()


@pytest.mark.parametrize("bad", [(0,), (2, -1), (3, 0, 1)])
def test_invalid_composition(bad):
    with pytest.raises(InvalidCompositionError):
        word_from_composition(bad)


def test_invalid_word():
    with pytest.raises(InvalidWordError):
        check_word("xzy")


def test_composition_from_word_needs_h1():
    with pytest.raises(NotInH1Error):
        composition_from_word("yx")


def test_parse_composition():
    assert parse_composition("3,1") == (3, 1)
    assert parse_composition(" 2 , 2 ,2") == (2, 2, 2)


def test_subspaces():
    assert in_h1("") and in_h0("")
    assert in_h1("y") and not in_h0("y")
    assert in_h0("xy") and not in_h0("yxy")
    assert not in_h1("xyx")
    assert z(3) == "xxy"


def test_word_counts():
    assert len(list(words(4))) == 16
    assert len(list(h1_words(5))) == 16
    assert len(list(h0_words(5))) == 8


def test_weight():
    assert weight(P("xy")) == 2
    assert weight(zw(3, 1)) == 4
    assert weight(P("xy + xxy")) == INHOMOGENEOUS
    with pytest.raises(UndefinedWeightError):
        weight(NcPoly.zero())


def test_poly_arithmetic_and_printing():
    p = P("xy") + 2 * P("xxy") - P("xy")
    assert p == P("2 xxy")
    assert str(P("xy + xx")) == "1 xx + 1 xy"
    assert str(NcPoly.zero()) == "0"
    assert str(P("-3 1")) == "-3 1"
    assert P("x") * P("y") == P("xy")
    assert (P("x + y") ** 2) == P("xx + xy + yx + yy")
    assert P("1/2 xy").coefficient("xy") == Fraction(1, 2)
    assert P(str(P("xy - 1/3 yy + 4"))) == P("xy - 1/3 yy + 4")


def test_gamma():
    assert gamma(P("y")) == P("x + y")
    assert gamma(P("xy")) == P("xx + xy")
    assert gamma(NcPoly.one()) == NcPoly.one()


@pytest.mark.parametrize("k1, k2", [(2, 2), (3, 1), (1, 4), (5, 2)])
def test_dmap_two_blocks(k1, k2):
    assert dmap(zw(k1, k2)) == zw(k1, k2) + zw(k1 + k2)


def test_dmap_edge_cases():
    for k in range(1, 7):
        assert dmap(zw(k)) == zw(k)
    assert dmap(NcPoly.one()) == NcPoly.one()
    with pytest.raises(NotInH1Error):
        dmap(P("xyx"))


def test_dmap_key_identity_examples():
    assert dmap_via_key_identity(zw(2, 2)) == zw(2, 2) + zw(4)
    assert dmap_via_key_identity(zw(3, 1)) == zw(3, 1) + zw(4)
    assert dmap_via_key_identity(zw(2)) == zw(2)


def test_dmap_is_sum_over_coarsenings():
    # d(z_k) sums z over every way of merging adjacent blocks
    k = (2, 1, 3)
    expected = zw(2, 1, 3) + zw(3, 3) + zw(2, 4) + zw(6)
    assert dmap(zw(*k)) == expected
