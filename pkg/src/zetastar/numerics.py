"""High-precision evaluation of multiple zeta and zeta-star values.

Two independent evaluators are provided:

* :func:`mzv_fast` splits the iterated-integral representation at 1/2 (Hölder
  convolution), so every factor is a multiple polylogarithm at 1/2 whose
  series converges like ``2^-n``.  The nested sums are done in binary
  fixed point with Python integers and a tracked error bound.
* :func:`mzv_oracle` sums the defining series directly up to a cutoff ``N``
  and adds the exact contribution of the variables above ``N`` using
  Euler-Maclaurin expansions of the tail sums in powers of ``1/N``.

The fast evaluator is the production path; the oracle exists to check it.
"""

from __future__ import annotations

import logging
import math
import os
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterable

import mpmath
from mpmath import mpf

from .algebra import (
    NcPoly,
    Word,
    X,
    Y,
    as_poly,
    composition_from_word,
    dmap,
    in_h0,
    is_admissible,
    word_from_composition,
)
from .errors import DivergentEvaluationError, ZetaStarError

log = logging.getLogger(__name__)

LOG2_10 = math.log2(10)


# --------------------------------------------------------------------------
# exact values


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    if n == 0:
        return (Fraction(1),)
    prev = _bernoulli_table(n - 1)
    # sum_{k=0}^{n} C(n+1, k) B_k = 0
    s = sum(math.comb(n + 1, k) * prev[k] for k in range(n))
    return prev + (-s / (n + 1),)


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number with ``B_1 = -1/2``."""
    if n < 0:
        raise ValueError("bernoulli index must be >= 0")
    if n > 1 and n % 2:
        return Fraction(0)
    # build the table incrementally to keep recursion shallow
    for m in range(0, n, 64):
        _bernoulli_table(m)
    return _bernoulli_table(n)[n]


def zeta_even(two_n: int) -> Fraction:
    """Rational ``q`` with ``zeta(2n) = q * pi^(2n)`` (Euler's formula)."""
    if two_n < 2 or two_n % 2:
        raise ValueError(f"zeta_even needs an even argument >= 2, got {two_n}")
    n = two_n // 2
    return (-1) ** (n + 1) * bernoulli(two_n) * 2 ** two_n / (2 * math.factorial(two_n))


def zetastar_twos(n: int) -> Fraction:
    """Rational ``q`` with ``zeta*({2}^n) = q * pi^(2n)``."""
    if n < 1:
        raise ValueError("zetastar_twos needs n >= 1")
    return 2 * (1 - Fraction(1, 2 ** (2 * n - 1))) * zeta_even(2 * n)


def zeta_twos(m: int) -> Fraction:
    """Rational ``q`` with ``zeta({2}^m) = q * pi^(2m)``."""
    return Fraction(1, math.factorial(2 * m + 1))


def zeta_three_one(n: int) -> Fraction:
    """Rational ``q`` with ``zeta({3,1}^n) = q * pi^(4n)``."""
    return Fraction(2, math.factorial(4 * n + 2))


# --------------------------------------------------------------------------
# precision bookkeeping


@dataclass(frozen=True)
class PrecisionConfig:
    digits: int = 50
    guard: int = 10
    oracle_digits: int = 8

    def __post_init__(self):
        if self.digits < 15:
            raise ValueError("digits must be >= 15")
        if self.guard < 5:
            raise ValueError("guard must be >= 5")
        if self.oracle_digits < 1:
            raise ValueError("oracle_digits must be >= 1")

    @property
    def working_digits(self) -> int:
        return self.digits + self.guard

    @property
    def tolerance(self) -> mpf:
        """Agreement threshold ``10^(-digits+guard)`` used by the checks."""
        return mpf(10) ** (-(self.digits - self.guard))


DEFAULT_CONFIG = PrecisionConfig()


@dataclass(frozen=True)
class HighPrecReal:
    """A real number with an upper bound on its absolute error."""

    value: mpf
    err: mpf
    dps: int

    @classmethod
    def exact(cls, q, dps: int) -> "HighPrecReal":
        with mpmath.workdps(dps + 5):
            q = Fraction(q)
            v = mpf(q.numerator) / q.denominator
            err = abs(v) * mpf(2) ** (-mpmath.mp.prec + 1)
        return cls(v, err, dps)

    def _rounding(self, v: mpf) -> mpf:
        return abs(v) * mpf(2) ** (-mpmath.mp.prec + 1)

    def __add__(self, other) -> "HighPrecReal":
        if not isinstance(other, HighPrecReal):
            other = HighPrecReal.exact(other, self.dps)
        dps = max(self.dps, other.dps)
        with mpmath.workdps(dps + 5):
            v = self.value + other.value
            return HighPrecReal(v, self.err + other.err + self._rounding(v), dps)

    __radd__ = __add__

    def __neg__(self) -> "HighPrecReal":
        with mpmath.workdps(self.dps + 5):
            return HighPrecReal(-self.value, self.err, self.dps)

    def __sub__(self, other) -> "HighPrecReal":
        return self + (-other)

    def __rsub__(self, other) -> "HighPrecReal":
        return (-self) + other

    def __mul__(self, other) -> "HighPrecReal":
        if isinstance(other, (int, Fraction)):
            with mpmath.workdps(self.dps + 5):
                q = Fraction(other)
                c = mpf(q.numerator) / q.denominator
                v = self.value * c
                return HighPrecReal(v, self.err * abs(c) + self._rounding(v), self.dps)
        dps = max(self.dps, other.dps)
        with mpmath.workdps(dps + 5):
            v = self.value * other.value
            err = (abs(self.value) * other.err + abs(other.value) * self.err
                   + self.err * other.err + self._rounding(v))
            return HighPrecReal(v, err, dps)

    __rmul__ = __mul__

    def __abs__(self) -> mpf:
        with mpmath.workdps(self.dps + 5):
            return abs(self.value)

    def to_decimal(self, digits: int | None = None) -> str:
        with mpmath.workdps(self.dps + 5):
            return mpmath.nstr(self.value, digits or self.dps, strip_zeros=False)

    def err_str(self) -> str:
        return mpmath.nstr(self.err, 3)

    def __str__(self) -> str:
        return f"{self.to_decimal()} +/- {self.err_str()}"


def pi_power(w: int, dps: int) -> mpf:
    with mpmath.workdps(dps + 5):
        return +mpmath.pi ** w


# --------------------------------------------------------------------------
# fast evaluator: Hölder convolution at 1/2 in binary fixed point


def _fixed_params(digits: int, max_weight: int) -> tuple[int, int, int]:
    """Return ``(bits, N, err_ulps)`` for a target of ``digits`` decimals."""
    target = math.ceil(digits * LOG2_10) + 12
    n = target
    # tail of Li_{1,...,1}(1/2) beyond N is below 4 * 2^-N (1 + ln N)^W
    while math.log2(4) - n + max_weight * math.log2(1 + math.log(n)) > -target:
        n += 1
    dp_bits = math.ceil(max_weight * math.log2(n + 2))
    bits = target + dp_bits + 8
    err_ulps = (n + 2) ** max_weight + (1 << (bits - target))
    return bits, n, err_ulps


@lru_cache(maxsize=2048)
def _inner_sums(comp: tuple, bits: int, n_max: int) -> tuple[int, ...]:
    # A[n] = sum_{n > m_1 > ... > m_k >= 1} prod m_i^-s_i, scaled by 2^bits
    if not comp:
        return (1 << bits,) * (n_max + 1)
    rest = _inner_sums(comp[1:], bits, n_max)
    s = comp[0]
    out = [0, 0]
    acc = 0
    for n in range(2, n_max + 1):
        acc += rest[n - 1] // (n - 1) ** s
        out.append(acc)
    return tuple(out)


@lru_cache(maxsize=65536)
def _li_half(comp: tuple, bits: int, n_max: int) -> int:
    """Fixed-point ``Li_comp(1/2)``; ``comp`` may start with 1."""
    if not comp:
        return 1 << bits
    rest = _inner_sums(comp[1:], bits, n_max)
    s = comp[0]
    return sum((rest[n] >> n) // n ** s for n in range(1, n_max + 1))


def _dual(prefix: Word) -> Word:
    return "".join(Y if c == X else X for c in reversed(prefix))


def _weight_class(weight: int) -> int:
    return max(16, -(-weight // 8) * 8)


def _mzv_fixed(k: tuple, working_digits: int) -> tuple[int, int, int]:
    """Fixed-point ``zeta(k)``; returns ``(mantissa, bits, err_ulps)``."""
    w = word_from_composition(k)
    bits, n_max, unit_err = _fixed_params(working_digits, _weight_class(len(w)))
    one = 1 << bits
    total = 0
    for i in range(len(w) + 1):
        pre, suf = _dual(w[:i]), w[i:]
        a = _li_half(composition_from_word(pre), bits, n_max) if pre else one
        b = _li_half(composition_from_word(suf), bits, n_max) if suf else one
        total += (a * b) >> bits
    err = (len(w) + 1) * (2 * unit_err + 2)
    return total, bits, err


def _check_admissible(k) -> tuple:
    k = tuple(int(p) for p in k)
    if any(p < 1 for p in k) or not is_admissible(k):
        raise DivergentEvaluationError(f"index {k} is not admissible")
    return k


def mzv_fast(k, cfg: PrecisionConfig = DEFAULT_CONFIG) -> HighPrecReal:
    """``zeta(k)`` with absolute error at most ``10^-cfg.digits``."""
    k = _check_admissible(k)
    if not k:
        return HighPrecReal.exact(1, cfg.working_digits)
    mant, bits, err_ulps = _mzv_fixed(k, cfg.working_digits)
    with mpmath.workprec(bits + 16):
        value = mpmath.ldexp(mpf(mant), -bits)
        internal = mpmath.ldexp(mpf(err_ulps), -bits)
    published = max(internal, mpf(10) ** (-cfg.digits))
    with mpmath.workdps(cfg.working_digits + 5):
        return HighPrecReal(+value, published, cfg.working_digits)


# --------------------------------------------------------------------------
# oracle: direct summation with Euler-Maclaurin tails

_ORACLE_CUTOFF = 64
_ORACLE_ORDER = 48


@lru_cache(maxsize=None)
def _power_tail(t: int, order: int, inclusive: bool) -> tuple[tuple[int, Fraction], ...]:
    """``sum_{n > m} n^-t`` (or ``n >= m``) as ``{e: c}`` meaning ``sum c m^-e``."""
    out = {t - 1: Fraction(1, t - 1), t: Fraction(1, 2) if inclusive else Fraction(-1, 2)}
    k = 1
    while t + 2 * k - 1 <= order:
        rising = math.prod(range(t, t + 2 * k - 1))
        out[t + 2 * k - 1] = bernoulli(2 * k) / math.factorial(2 * k) * rising
        k += 1
    return tuple((e, c) for e, c in out.items() if e <= order and c)


def _tail_expansion(prefix: tuple, star: bool, order: int) -> dict[int, Fraction]:
    """Expansion in ``1/N`` of the prefix sum with every variable above ``N``."""
    series = {0: Fraction(1)}
    for level, s in enumerate(prefix):
        last = level == len(prefix) - 1
        inclusive = star and not last
        nxt: dict[int, Fraction] = {}
        for e, c in series.items():
            for e2, c2 in _power_tail(s + e, order, inclusive):
                nxt[e2] = nxt.get(e2, 0) + c * c2
        series = nxt
    return series


def _head_sum(suffix: tuple, star: bool, cutoff: int) -> mpf:
    """Sum over ``cutoff >= n_1 (>|>=) n_2 ... >= 1`` of ``prod n_i^-s_i``."""
    if not suffix:
        return mpf(1)
    # B[n] = sum over the remaining variables bounded by n (inclusive)
    bounded = [mpf(1)] * (cutoff + 1)
    for s in reversed(suffix):
        nxt = [mpf(0)] * (cutoff + 1)
        acc = mpf(0)
        for n in range(1, cutoff + 1):
            term = (bounded[n] if star else bounded[n - 1]) / mpf(n) ** s
            acc += term
            nxt[n] = acc
        bounded = nxt
    return bounded[cutoff]


def _oracle(k: tuple, star: bool, cfg: PrecisionConfig) -> HighPrecReal:
    cutoff, order = _ORACLE_CUTOFF, _ORACLE_ORDER
    dps = cfg.oracle_digits + 12
    with mpmath.workdps(dps):
        total = mpf(0)
        for r in range(len(k) + 1):
            head = _head_sum(k[r:], star, cutoff)
            if r == 0:
                total += head
                continue
            series = _tail_expansion(k[:r], star, order)
            tail = mpf(0)
            for e, c in series.items():
                tail += mpf(c.numerator) / c.denominator / mpf(cutoff) ** e
            total += tail * head
        err = mpf(10) ** (-cfg.oracle_digits)
    return HighPrecReal(total, err, dps)


ORACLE_MAX_WEIGHT = 8


def mzv_oracle(k, cfg: PrecisionConfig = DEFAULT_CONFIG) -> HighPrecReal:
    """Slow reference value of ``zeta(k)`` to ``cfg.oracle_digits`` digits."""
    k = _check_admissible(k)
    if sum(k) > ORACLE_MAX_WEIGHT:
        raise ValueError(f"oracle is limited to weight <= {ORACLE_MAX_WEIGHT}")
    return _oracle(k, False, cfg)


def mzsv_oracle(k, cfg: PrecisionConfig = DEFAULT_CONFIG) -> HighPrecReal:
    """Direct-series reference value of ``zeta*(k)`` (non-strict inequalities)."""
    k = _check_admissible(k)
    if sum(k) > ORACLE_MAX_WEIGHT:
        raise ValueError(f"oracle is limited to weight <= {ORACLE_MAX_WEIGHT}")
    return _oracle(k, True, cfg)


# --------------------------------------------------------------------------
# persistent value cache


@dataclass(frozen=True)
class ValueCacheEntry:
    index: tuple
    star: bool
    digits: int
    value: str

    def to_line(self) -> str:
        return f"{int(self.star)};{','.join(map(str, self.index))};{self.digits};{self.value}\n"

    @classmethod
    def from_line(cls, line: str) -> "ValueCacheEntry":
        star, index, digits, value = line.strip().split(";")
        if star not in ("0", "1"):
            raise ValueError(f"bad star flag {star!r}")
        idx = tuple(int(p) for p in index.split(",")) if index else ()
        mpmath.mpf(value)  # must parse as a decimal
        return cls(idx, star == "1", int(digits), value)


def default_cache_dir() -> Path:
    env = os.environ.get("ZETASTAR_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "zetastar"


class ValueCache:
    """Append-only text cache, one ``star;index;digits;value`` record per line."""

    FILENAME = "values.txt"

    def __init__(self, directory: Path | str | None = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self.path = self.directory / self.FILENAME
        self._lock = threading.Lock()
        self._entries: dict[tuple[bool, tuple], ValueCacheEntry] | None = None

    def _load(self) -> dict:
        if self._entries is not None:
            return self._entries
        entries: dict[tuple[bool, tuple], ValueCacheEntry] = {}
        if self.path.exists():
            with open(self.path, encoding="ascii", errors="replace") as fh:
                for lineno, line in enumerate(fh, 1):
                    if not line.strip():
                        continue
                    try:
                        e = ValueCacheEntry.from_line(line)
                    except (ValueError, TypeError):
                        log.warning("ignoring corrupt cache line %d in %s", lineno, self.path)
                        continue
                    key = (e.star, e.index)
                    if key not in entries or entries[key].digits < e.digits:
                        entries[key] = e
        self._entries = entries
        return entries

    def get(self, index, star: bool, digits: int) -> ValueCacheEntry | None:
        with self._lock:
            e = self._load().get((bool(star), tuple(index)))
        if e is None or e.digits < digits:
            return None
        return e

    def put(self, entry: ValueCacheEntry) -> None:
        with self._lock:
            entries = self._load()
            key = (entry.star, entry.index)
            old = entries.get(key)
            if old is not None and old.digits >= entry.digits:
                return
            self.directory.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="ascii") as fh:
                fh.write(entry.to_line())
            entries[key] = entry

    def entries(self) -> list[ValueCacheEntry]:
        with self._lock:
            return sorted(self._load().values(), key=lambda e: (e.star, sum(e.index), e.index))

    def clear(self) -> None:
        with self._lock:
            if self.path.exists():
                self.path.unlink()
            self._entries = {}


def cache_get(cache: ValueCache, index, star: bool, digits: int) -> ValueCacheEntry | None:
    return cache.get(index, star, digits)


def cache_put(cache: ValueCache, entry: ValueCacheEntry) -> None:
    cache.put(entry)


# --------------------------------------------------------------------------
# evaluator facade


@dataclass
class Evaluator:
    """Evaluates MZVs, MZSVs and H^0 polynomials at one precision.

    Values are memoized per instance; an optional :class:`ValueCache` makes
    them persistent across runs.
    """

    cfg: PrecisionConfig = DEFAULT_CONFIG
    cache: ValueCache | None = None
    _memo: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def _from_cache(self, k: tuple, star: bool) -> HighPrecReal | None:
        if self.cache is None:
            return None
        e = self.cache.get(k, star, self.cfg.digits)
        if e is None:
            return None
        with mpmath.workdps(self.cfg.working_digits + 5):
            v = mpf(e.value)
        return HighPrecReal(v, mpf(10) ** (-self.cfg.digits), self.cfg.working_digits)

    def _to_cache(self, k: tuple, star: bool, v: HighPrecReal) -> None:
        if self.cache is not None:
            self.cache.put(ValueCacheEntry(k, star, self.cfg.digits, v.to_decimal(self.cfg.working_digits)))

    def _lookup(self, k: tuple, star: bool, compute) -> HighPrecReal:
        key = (star, k)
        with self._lock:
            hit = self._memo.get(key)
        if hit is not None:
            return hit
        v = self._from_cache(k, star)
        if v is None:
            v = compute(k)
            self._to_cache(k, star, v)
        with self._lock:
            self._memo[key] = v
        return v

    def mzv(self, k) -> HighPrecReal:
        k = _check_admissible(k)
        return self._lookup(k, False, lambda kk: mzv_fast(kk, self.cfg))

    def mzsv(self, k) -> HighPrecReal:
        k = _check_admissible(k)
        return self._lookup(k, True, lambda kk: self.eval_poly(dmap(NcPoly.zword(*kk))))

    def eval_poly(self, p) -> HighPrecReal:
        p = as_poly(p)
        total = HighPrecReal.exact(0, self.cfg.working_digits)
        for w, c in p.items():
            if not in_h0(w):
                raise DivergentEvaluationError(f"term {w!r} is outside H^0")
            total = total + self.mzv(composition_from_word(w)) * c
        return total

    def pi_power(self, w: int) -> mpf:
        return pi_power(w, self.cfg.working_digits)

    def rational_times_pi(self, q, w: int) -> HighPrecReal:
        """``q * pi^w`` as a :class:`HighPrecReal`."""
        dps = self.cfg.working_digits
        with mpmath.workdps(dps + 5):
            q = Fraction(q)
            v = mpf(q.numerator) / q.denominator * self.pi_power(w)
            return HighPrecReal(v, abs(v) * mpf(10) ** (-(dps + 2)), dps)


@lru_cache(maxsize=16)
def evaluator_for(cfg: PrecisionConfig) -> Evaluator:
    return Evaluator(cfg)


def mzsv(k, cfg: PrecisionConfig = DEFAULT_CONFIG, spot_check: bool = False) -> HighPrecReal:
    """``zeta*(k)`` via the d-map: a sum of at most ``2^(n-1)`` MZVs."""
    v = evaluator_for(cfg).mzsv(k)
    if spot_check and sum(k) <= ORACLE_MAX_WEIGHT:
        ref = mzsv_oracle(k, cfg)
        if abs(v.value - ref.value) > ref.err:
            raise ZetaStarError(f"zeta*{tuple(k)}: fast {v.value} disagrees with direct series {ref.value}")
    return v


def eval_poly(p, cfg: PrecisionConfig = DEFAULT_CONFIG) -> HighPrecReal:
    """``Z(p)`` for ``p`` in H^0, extended Q-linearly."""
    return evaluator_for(cfg).eval_poly(p)


def admissible_indices(max_weight: int) -> Iterable[tuple]:
    from .algebra import admissible_compositions

    for w in range(2, max_weight + 1):
        yield from admissible_compositions(w)
