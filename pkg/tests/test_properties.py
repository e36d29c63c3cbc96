"""Algebraic and numeric invariants checked on random inputs."""

import random
from fractions import Fraction

import mpmath
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st
from mpmath import mpf

from zetastar.algebra import NcPoly, composition_from_word, dmap, dmap_via_key_identity, gamma, word_from_composition
from zetastar.numerics import DEFAULT_CONFIG, HighPrecReal, PrecisionConfig, eval_poly, evaluator_for
from zetastar.products import harmonic, reg_shuffle, shuffle, tilde
from zetastar.reconstruct import reconstruct_pi_power

FAST = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
CFG = PrecisionConfig(digits=30)


def compositions_up_to(max_weight):
    return st.lists(st.integers(1, 4), max_size=5).filter(lambda k: sum(k) <= max_weight).map(tuple)


def admissible_up_to(max_weight):
    return st.tuples(st.integers(2, 4), compositions_up_to(max_weight - 2)).map(
        lambda t: (t[0],) + t[1]).filter(lambda k: sum(k) <= max_weight)


words = st.text(alphabet="xy", max_size=6)
h1_words = compositions_up_to(6).map(word_from_composition)


def polys(word_strategy, max_terms=3):
    term = st.tuples(word_strategy, st.fractions(min_value=-3, max_value=3, max_denominator=4))
    return st.lists(term, max_size=max_terms).map(
        lambda ts: sum((NcPoly.word(w) * c for w, c in ts), NcPoly.zero()))


@given(compositions_up_to(12))
def test_composition_round_trip(k):
    assert composition_from_word(word_from_composition(k)) == k


@given(st.text(alphabet="xy", max_size=10).map(lambda w: w + "y"))
def test_word_round_trip(w):
    assert word_from_composition(composition_from_word(w)) == w


@FAST
@given(words, words)
def test_gamma_multiplicative(u, v):
    assert gamma(NcPoly.word(u + v)) == gamma(NcPoly.word(u)) * gamma(NcPoly.word(v))


@FAST
@given(h1_words)
def test_dmap_implementations_agree(w):
    assert dmap(NcPoly.word(w)) == dmap_via_key_identity(NcPoly.word(w))


@FAST
@given(polys(h1_words), polys(h1_words))
def test_products_commute(u, v):
    assert harmonic(u, v) == harmonic(v, u)
    assert tilde(u, v) == tilde(v, u)
    assert shuffle(u, v) == shuffle(v, u)


@settings(max_examples=30, deadline=None)
@given(h1_words, h1_words, h1_words)
def test_products_associate(a, b, c):
    a, b, c = (NcPoly.word(w) for w in (a, b, c))
    assert harmonic(harmonic(a, b), c) == harmonic(a, harmonic(b, c))
    assert tilde(tilde(a, b), c) == tilde(a, tilde(b, c))
    assert shuffle(shuffle(a, b), c) == shuffle(a, shuffle(b, c))


@FAST
@given(h1_words, h1_words)
def test_closure(u, v):
    u, v = NcPoly.word(u), NcPoly.word(v)
    for p in (harmonic(u, v), tilde(u, v), shuffle(u, v)):
        assert p.in_h1()
    if u.in_h0() and v.in_h0():
        assert harmonic(u, v).in_h0() and shuffle(u, v).in_h0()


@FAST
@given(h1_words, h1_words)
def test_reg_is_shuffle_homomorphism(u, v):
    u, v = NcPoly.word(u), NcPoly.word(v)
    assert reg_shuffle(shuffle(u, v)) == shuffle(reg_shuffle(u), reg_shuffle(v))


@FAST
@given(polys(h1_words))
def test_reg_idempotent(p):
    r = reg_shuffle(p)
    assert r.in_h0()
    assert reg_shuffle(r) == r


@settings(max_examples=25, deadline=None)
@given(admissible_up_to(6), admissible_up_to(6))
def test_harmonic_product_evaluates_multiplicatively(a, b):
    ev = evaluator_for(CFG)
    lhs = eval_poly(harmonic(NcPoly.zword(*a), NcPoly.zword(*b)), CFG)
    rhs = ev.mzv(a) * ev.mzv(b)
    assert abs(lhs.value - rhs.value) <= lhs.err + rhs.err


@settings(max_examples=25, deadline=None)
@given(admissible_up_to(6), admissible_up_to(6))
def test_shuffle_product_evaluates_multiplicatively(a, b):
    ev = evaluator_for(CFG)
    lhs = eval_poly(shuffle(NcPoly.zword(*a), NcPoly.zword(*b)), CFG)
    rhs = ev.mzv(a) * ev.mzv(b)
    assert abs(lhs.value - rhs.value) <= lhs.err + rhs.err


def test_tilde_is_not_multiplicative():
    ev = evaluator_for(DEFAULT_CONFIG)
    lhs = eval_poly(tilde(NcPoly.zword(2), NcPoly.zword(2)))
    square = ev.mzv((2,)) * ev.mzv((2,))
    assert abs(lhs.value - square.value) > mpf(10) ** -5


@settings(max_examples=100, deadline=None)
@given(st.integers(-10 ** 6, 10 ** 6), st.integers(1, 10 ** 6), st.integers(0, 12))
def test_reconstruction_round_trip(p, q, w):
    cfg = DEFAULT_CONFIG
    v = evaluator_for(cfg).rational_times_pi(Fraction(p, q), w)
    res = reconstruct_pi_power(v, w, cfg)
    assert res.accepted and res.fraction == Fraction(p, q)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 10 ** 6), st.integers(1, 10 ** 6), st.integers(0, 12), st.integers(-30, 30))
def test_reconstruction_is_robust_to_noise(p, q, w, noise):
    # noise below the reported error still reconstructs; a relative shift of 1e-20 must never
    # be accepted as the original fraction (it may legitimately match some other p'/q' with q' <= qmax)
    cfg = DEFAULT_CONFIG
    exact = evaluator_for(cfg).rational_times_pi(Fraction(p, q), w)
    dps = exact.dps
    with mpmath.workdps(dps + 10):
        small = HighPrecReal(exact.value + noise * mpf(10) ** -50, mpf(10) ** -48, dps)
        large = HighPrecReal(exact.value * (1 + mpf(10) ** -20), mpf(10) ** -48, dps)
    assert reconstruct_pi_power(small, w, cfg).fraction == Fraction(p, q)
    res = reconstruct_pi_power(large, w, cfg)
    assert not (res.accepted and res.fraction == Fraction(p, q))

