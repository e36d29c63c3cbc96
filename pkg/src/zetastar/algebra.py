"""Words and noncommutative polynomials over the alphabet {x, y}.

Words are plain ``str`` objects over ``"x"`` and ``"y"`` (the empty string is
the unit word ``1``).  A composition ``(k1, ..., kn)`` corresponds to the word
``z_{k1} ... z_{kn}`` with ``z_k = x^(k-1) y``.  Polynomials carry exact
:class:`fractions.Fraction` coefficients.
"""

from __future__ import annotations

import enum
import itertools
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Union

from .errors import (
    InvalidCompositionError,
    InvalidWordError,
    NotInH1Error,
    UndefinedWeightError,
)

Word = str
Composition = tuple  # tuple[int, ...]
Rational = Union[int, Fraction]

INHOMOGENEOUS = "inhomogeneous"


class Letter(str, enum.Enum):
    X = "x"
    Y = "y"


X = Letter.X.value
Y = Letter.Y.value

_WORD_RE = re.compile(r"^[xy]*$")


def check_word(w: str) -> Word:
    if w == "1":
        return ""
    if not _WORD_RE.match(w):
        raise InvalidWordError(f"not a word over {{x, y}}: {w!r}")
    return w


def in_h1(w: Word) -> bool:
    return w == "" or w[-1] == Y


def in_h0(w: Word) -> bool:
    return w == "" or (w[0] == X and w[-1] == Y)


def z(k: int) -> Word:
    """The generator ``z_k = x^(k-1) y``."""
    if k < 1:
        raise InvalidCompositionError(f"z_k needs k >= 1, got {k}")
    return X * (k - 1) + Y


def word_from_composition(k: Iterable[int]) -> Word:
    return "".join(z(int(part)) for part in k)


def composition_from_word(w: Word) -> Composition:
    w = check_word(w)
    if not in_h1(w):
        raise NotInH1Error(f"word {w!r} does not end with y")
    parts = []
    run = 0
    for letter in w:
        if letter == X:
            run += 1
        elif letter == Y:
            parts.append(run + 1)
            run = 0
        else:
            raise InvalidWordError(f"bad letter {letter!r} in {w!r}")
    return tuple(parts)


def parse_composition(text: str) -> Composition:
    """Parse ``"3,1"`` into ``(3, 1)``; an empty string or ``"()"`` is the empty index."""
    text = text.strip().strip("()")
    if not text:
        return ()
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise InvalidCompositionError(f"cannot parse composition {text!r}") from exc
    if any(p < 1 for p in parts):
        raise InvalidCompositionError(f"parts must be >= 1: {parts}")
    return parts


def is_admissible(k: Composition) -> bool:
    return len(k) == 0 or k[0] >= 2


def compositions(total: int) -> Iterator[Composition]:
    """All compositions of ``total`` (the empty one for ``total == 0``)."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            yield (first,) + rest


def admissible_compositions(total: int) -> Iterator[Composition]:
    return (k for k in compositions(total) if is_admissible(k))


def words(length: int) -> Iterator[Word]:
    for letters in itertools.product((X, Y), repeat=length):
        yield "".join(letters)


def h1_words(length: int) -> Iterator[Word]:
    return (w for w in words(length) if in_h1(w))


def h0_words(length: int) -> Iterator[Word]:
    return (w for w in words(length) if in_h0(w))


def _word_key(w: Word):
    return (len(w), w)


def _format_coefficient(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class NcPoly:
    """Immutable finite Q-linear combination of words.

    ``*`` is the concatenation product of the free algebra (or scaling by a
    rational); the harmonic, tilde and shuffle products live in
    :mod:`zetastar.products`.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Word, Rational] | None = None):
        clean: dict[Word, Fraction] = {}
        for w, c in (terms or {}).items():
            w = check_word(w)
            c = Fraction(c)
            if c:
                clean[w] = clean.get(w, Fraction(0)) + c
                if not clean[w]:
                    del clean[w]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Word, Fraction]) -> "NcPoly":
        obj = cls.__new__(cls)
        obj._terms = {w: c for w, c in terms.items() if c}
        obj._hash = None
        return obj

    @classmethod
    def word(cls, w: Word, coeff: Rational = 1) -> "NcPoly":
        return cls({w: coeff})

    @classmethod
    def zword(cls, *ks: int) -> "NcPoly":
        return cls({word_from_composition(ks): 1})

    @classmethod
    def zero(cls) -> "NcPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "NcPoly":
        return cls._raw({"": Fraction(1)})

    @classmethod
    def parse(cls, text: str) -> "NcPoly":
        """Parse the printed form, e.g. ``"1 xyy + 1/2 xxy - xy"`` or ``"0"``."""
        text = text.strip()
        if text in ("", "0"):
            return cls.zero()
        tokens = re.findall(r"[+-]|[^\s+-]+", text)
        terms: dict[Word, Fraction] = {}
        sign, coeff = 1, None
        for tok in tokens:
            if tok in "+-":
                sign = -1 if tok == "-" else 1
                continue
            if re.fullmatch(r"\d+(/\d+)?", tok) and coeff is None:
                coeff = Fraction(tok)
                continue
            w = check_word(tok)
            c = sign * (coeff if coeff is not None else Fraction(1))
            terms[w] = terms.get(w, Fraction(0)) + c
            sign, coeff = 1, None
        if coeff is not None:  # trailing bare scalar means scalar times the unit word
            terms[""] = terms.get("", Fraction(0)) + sign * coeff
        return cls(terms)

    @property
    def terms(self) -> Mapping[Word, Fraction]:
        return dict(self._terms)

    def items(self) -> list[tuple[Word, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: _word_key(t[0]))

    def coefficient(self, w: Word) -> Fraction:
        return self._terms.get(check_word(w), Fraction(0))

    def support(self) -> list[Word]:
        return sorted(self._terms, key=_word_key)

    def is_zero(self) -> bool:
        return not self._terms

    def in_h1(self) -> bool:
        return all(in_h1(w) for w in self._terms)

    def in_h0(self) -> bool:
        return all(in_h0(w) for w in self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self):
        return iter(self.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, NcPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == NcPoly({"": other})
        if isinstance(other, str):
            return self == NcPoly.word(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other) -> "NcPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return NcPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "NcPoly":
        return NcPoly._raw({w: -c for w, c in self._terms.items()})

    def __sub__(self, other) -> "NcPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "NcPoly":
        return (-self) + other

    def __mul__(self, other) -> "NcPoly":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return NcPoly._raw({w: c * v for w, v in self._terms.items()})
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Word, Fraction] = {}
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                out[u + v] = out.get(u + v, 0) + a * b
        return NcPoly._raw(out)

    def __rmul__(self, other) -> "NcPoly":
        if isinstance(other, (int, Fraction)):
            return self * other
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self

    def __pow__(self, n: int) -> "NcPoly":
        out = NcPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (w, c) in enumerate(self.items()):
            body = f"{_format_coefficient(abs(c))} {w or '1'}"
            if i == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"NcPoly({str(self)!r})"


def _coerce(obj) -> NcPoly:
    if isinstance(obj, NcPoly):
        return obj
    if isinstance(obj, str):
        return NcPoly.word(obj)
    if isinstance(obj, (int, Fraction)):
        return NcPoly({"": obj})
    return NotImplemented


def as_poly(obj) -> NcPoly:
    p = _coerce(obj)
    if p is NotImplemented:
        raise TypeError(f"cannot interpret {obj!r} as a polynomial")
    return p


def weight(p) -> int | str:
    """Common weight of all terms, or :data:`INHOMOGENEOUS`."""
    p = as_poly(p)
    if p.is_zero():
        raise UndefinedWeightError("the zero polynomial has no weight")
    weights = {len(w) for w in p.terms}
    return weights.pop() if len(weights) == 1 else INHOMOGENEOUS


@lru_cache(maxsize=None)
def _gamma_word(w: Word) -> tuple[Word, ...]:
    # gamma(y) = x + y: every y independently stays or becomes x
    choices = [(X,) if letter == X else (X, Y) for letter in w]
    return tuple("".join(c) for c in itertools.product(*choices))


def gamma(p) -> NcPoly:
    """The automorphism fixing x and sending y to x + y."""
    p = as_poly(p)
    out: dict[Word, Fraction] = {}
    for w, c in p.terms.items():
        for v in _gamma_word(w):
            out[v] = out.get(v, 0) + c
    return NcPoly._raw(out)


def _require_h1(p: NcPoly) -> None:
    for w in p.terms:
        if not in_h1(w):
            raise NotInH1Error(f"term {w!r} is not in H^1")


def dmap(p) -> NcPoly:
    """The linear map d(wy) = gamma(w) y, d(1) = 1 (star values are Z o d)."""
    p = as_poly(p)
    _require_h1(p)
    out: dict[Word, Fraction] = {}
    for w, c in p.terms.items():
        if w == "":
            out[""] = out.get("", 0) + c
            continue
        for v in _gamma_word(w[:-1]):
            out[v + Y] = out.get(v + Y, 0) + c
    return NcPoly._raw(out)


@lru_cache(maxsize=None)
def _d_recursive(k: Composition) -> tuple[tuple[Composition, int], ...]:
    # d(z_k1 ... z_kn) = sum_i z_{k1+...+ki} d(z_{k(i+1)} ... z_kn)
    if not k:
        return (((), 1),)
    acc: dict[Composition, int] = {}
    head = 0
    for i, part in enumerate(k):
        head += part
        for tail, c in _d_recursive(k[i + 1:]):
            key = (head,) + tail
            acc[key] = acc.get(key, 0) + c
    return tuple(acc.items())


def dmap_via_key_identity(p) -> NcPoly:
    """Same map as :func:`dmap`, computed by recursion on leading z-blocks."""
    p = as_poly(p)
    _require_h1(p)
    out: dict[Word, Fraction] = {}
    for w, c in p.terms.items():
        for k, m in _d_recursive(composition_from_word(w)):
            v = word_from_composition(k)
            out[v] = out.get(v, 0) + c * m
    return NcPoly._raw(out)
