"""Harmonic, tilde and shuffle products, and shuffle regularization.

Word-level products are memoized pure functions returning integer-coefficient
tuples; polynomial products extend them bilinearly.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .algebra import (
    NcPoly,
    Word,
    X,
    Y,
    as_poly,
    composition_from_word,
    in_h1,
    word_from_composition,
)
from .errors import NotInH1Error

_Terms = tuple  # tuple[tuple[key, int], ...]


def _accumulate(acc: dict, prefix, terms: _Terms, scale: int = 1) -> None:
    for key, c in terms:
        k = prefix + key
        acc[k] = acc.get(k, 0) + scale * c


@lru_cache(maxsize=200_000)
def _stuffle(a: tuple, b: tuple) -> _Terms:
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    acc: dict = {}
    _accumulate(acc, a[:1], _stuffle(a[1:], b))
    _accumulate(acc, b[:1], _stuffle(a, b[1:]))
    _accumulate(acc, (a[0] + b[0],), _stuffle(a[1:], b[1:]))
    return tuple(acc.items())


@lru_cache(maxsize=200_000)
def _block_shuffle(a: tuple, b: tuple) -> _Terms:
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    acc: dict = {}
    _accumulate(acc, a[:1], _block_shuffle(a[1:], b))
    _accumulate(acc, b[:1], _block_shuffle(a, b[1:]))
    return tuple(acc.items())


@lru_cache(maxsize=200_000)
def _letter_shuffle(u: Word, v: Word) -> _Terms:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    acc: dict = {}
    _accumulate(acc, u[0], _letter_shuffle(u[1:], v))
    _accumulate(acc, v[0], _letter_shuffle(u, v[1:]))
    return tuple(acc.items())


def _composition_product(word_op: Callable[[tuple, tuple], _Terms]):
    def on_words(u: Word, v: Word) -> _Terms:
        terms = word_op(composition_from_word(u), composition_from_word(v))
        return tuple((word_from_composition(k), c) for k, c in terms)

    return on_words


def _require_h1(p: NcPoly, name: str) -> None:
    for w in p.terms:
        if not in_h1(w):
            raise NotInH1Error(f"{name}: term {w!r} is not in H^1")


def _bilinear(word_op, u: NcPoly, v: NcPoly) -> NcPoly:
    out: dict[Word, Fraction] = {}
    for w1, c1 in u.terms.items():
        for w2, c2 in v.terms.items():
            c = c1 * c2
            for w, m in word_op(w1, w2):
                out[w] = out.get(w, 0) + c * m
    return NcPoly._raw(out)


_harmonic_words = _composition_product(_stuffle)
_tilde_words = _composition_product(_block_shuffle)


def harmonic(u, v) -> NcPoly:
    """Harmonic (stuffle) product on H^1."""
    u, v = as_poly(u), as_poly(v)
    _require_h1(u, "harmonic")
    _require_h1(v, "harmonic")
    return _bilinear(_harmonic_words, u, v)


def tilde(u, v) -> NcPoly:
    """Shuffle of z-blocks without the stuffing term."""
    u, v = as_poly(u), as_poly(v)
    _require_h1(u, "tilde")
    _require_h1(v, "tilde")
    return _bilinear(_tilde_words, u, v)


def shuffle(u, v) -> NcPoly:
    """Letter-level shuffle product on all of H."""
    return _bilinear(_letter_shuffle, as_poly(u), as_poly(v))


@lru_cache(maxsize=None)
def _reg_word(w: Word) -> _Terms:
    m = len(w) - len(w.lstrip(Y))
    if m == 0:
        return ((w, Fraction(1)),)
    u = w[m:]
    if not u:
        return ()
    # y sh y^(m-1)u = m y^m u + sum_{j>=1} y^(m-1) u_j, and reg kills the left side
    head = Y * (m - 1)
    acc: dict[Word, Fraction] = {}
    for j in range(1, len(u) + 1):
        for v, c in _reg_word(head + u[:j] + Y + u[j:]):
            acc[v] = acc.get(v, 0) + c
    scale = Fraction(-1, m)
    return tuple((v, scale * c) for v, c in acc.items() if c)


def reg_shuffle(p) -> NcPoly:
    """Constant term of ``p`` in the decomposition of H^1 as a polynomial ring in y over H^0."""
    p = as_poly(p)
    _require_h1(p, "reg_shuffle")
    out: dict[Word, Fraction] = {}
    for w, c in p.terms.items():
        for v, r in _reg_word(w):
            out[v] = out.get(v, 0) + c * r
    return NcPoly._raw(out)


PRODUCTS = {
    "harmonic": harmonic,
    "tilde": tilde,
    "shuffle": shuffle,
}

__all__ = ["harmonic", "tilde", "shuffle", "reg_shuffle", "PRODUCTS", "X", "Y"]
