"""Zeta-star sums over {2}-blocks inserted into the 3,1,...,3,1 skeleton.

A j-vector ``(j_0, ..., j_2n)`` names the index
``({2}^j_0, 3, {2}^j_1, 1, {2}^j_2, ..., 3, {2}^j_(2n-1), 1, {2}^j_2n)``.
The routines here evaluate sums of such values (and the closed forms they are
expected to match) and hand the totals to :mod:`zetastar.reconstruct`.
"""

from __future__ import annotations

import itertools
import math
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import mpmath

from .errors import InvalidJVectorError, CapExceededError
from .identities import weight6_sides
from .numerics import (
    DEFAULT_CONFIG,
    Evaluator,
    HighPrecReal,
    PrecisionConfig,
    bernoulli,
    evaluator_for,
)
from .reconstruct import DEFAULT_QMAX, ReconstructionResult, reconstruct_pi_power

WEIGHT_CAP = 16
PARTIAL_SUBSET_CAP = 12


# --------------------------------------------------------------------------
# index builders


def _check_entries(j: Sequence[int]) -> tuple[int, ...]:
    j = tuple(int(v) for v in j)
    if any(v < 0 for v in j):
        raise InvalidJVectorError(f"j-vector entries must be >= 0: {j}")
    return j


def index_from_jvector(j: Sequence[int]) -> tuple[int, ...]:
    """The index of Zbar(j_0, ..., j_2n); ``j`` must have odd length."""
    j = _check_entries(j)
    if len(j) % 2 == 0:
        raise InvalidJVectorError(f"j-vector must have odd length, got {len(j)}")
    parts: list[int] = [2] * j[0]
    for pos in range(1, len(j)):
        parts.append(3 if pos % 2 else 1)
        parts.extend([2] * j[pos])
    return tuple(parts)


def op_plus(s: Sequence[int]) -> tuple[int, ...]:
    """(j_0, ..., j_n)_+ = (j_0, ..., j_n, 0)."""
    return _check_entries(s) + (0,)


def op_superplus(s: Sequence[int]) -> tuple[int, ...]:
    """(j_0, ..., j_n)^+ = (j_0, ..., j_n + 1)."""
    s = _check_entries(s)
    if not s:
        raise InvalidJVectorError("the ^+ operator needs a non-empty vector")
    return s[:-1] + (s[-1] + 1,)


def weak_compositions(total: int, length: int) -> Iterator[tuple[int, ...]]:
    """Vectors of ``length`` non-negative integers summing to ``total``, lexicographic."""
    if length == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in weak_compositions(total - first, length - 1):
            yield (first,) + rest


def twos(m: int) -> tuple[int, ...]:
    return (2,) * m


def three_ones(n: int) -> tuple[int, ...]:
    return (3, 1) * n


# --------------------------------------------------------------------------
# reports


@dataclass
class NumericReport:
    name: str
    parameters: dict
    lhs: HighPrecReal
    rhs: HighPrecReal
    tolerance: mpmath.mpf
    relative: bool = False
    elapsed: float = 0.0
    detail: dict = field(default_factory=dict)

    @property
    def abs_difference(self) -> mpmath.mpf:
        with mpmath.workdps(self.lhs.dps + 5):
            return abs(self.lhs.value - self.rhs.value)

    @property
    def rel_difference(self) -> mpmath.mpf:
        with mpmath.workdps(self.lhs.dps + 5):
            scale = abs(self.rhs.value)
            return self.abs_difference / scale if scale else self.abs_difference

    @property
    def holds(self) -> bool:
        diff = self.rel_difference if self.relative else self.abs_difference
        return bool(diff < self.tolerance)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": self.parameters,
            "lhs": self.lhs.to_decimal(),
            "rhs": self.rhs.to_decimal(),
            "abs_difference": mpmath.nstr(self.abs_difference, 5),
            "rel_difference": mpmath.nstr(self.rel_difference, 5),
            "tolerance": mpmath.nstr(self.tolerance, 5),
            "relative": self.relative,
            "holds": self.holds,
            **{k: v for k, v in self.detail.items()},
        }

    def __str__(self) -> str:
        kind = "rel" if self.relative else "abs"
        diff = self.rel_difference if self.relative else self.abs_difference
        params = ", ".join(f"{k}={v}" for k, v in self.parameters.items())
        return (f"{self.name}({params}): {'holds' if self.holds else 'FAILS'} "
                f"[{kind} diff {mpmath.nstr(diff, 3)} < {mpmath.nstr(self.tolerance, 3)}]")


@dataclass
class ConjectureReport:
    conjecture: str
    parameters: dict
    value: HighPrecReal
    pi_power: int
    reconstruction: ReconstructionResult
    terms: list[tuple[tuple[int, ...], int]] = field(default_factory=list)
    partial_acceptances: list[list[tuple[int, ...]]] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def verdict(self) -> bool:
        return self.reconstruction.accepted

    def to_dict(self) -> dict:
        return {
            "conjecture": self.conjecture,
            "params": self.parameters,
            "value": self.value.to_decimal(),
            "err": self.value.err_str(),
            "pi_power": self.pi_power,
            "reconstruction": self.reconstruction.to_dict(),
            "terms": [{"index": list(k), "multiplicity": m} for k, m in self.terms],
            "partial_acceptances": [[list(k) for k in subset] for subset in self.partial_acceptances],
            "verdict": self.verdict,
        }

    def __str__(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.parameters.items())
        lines = [f"{self.conjecture}({params}): sum = {self.value.to_decimal(30)}...",
                 f"  {self.reconstruction}"]
        if self.partial_acceptances:
            lines.append(f"  note: {len(self.partial_acceptances)} proper sub-sum(s) also reconstruct")
        return "\n".join(lines)


def _ev(cfg: PrecisionConfig, evaluator: Evaluator | None) -> Evaluator:
    return evaluator if evaluator is not None else evaluator_for(cfg)


def _total(ev: Evaluator, terms, star: bool = True) -> HighPrecReal:
    total = HighPrecReal.exact(0, ev.cfg.working_digits)
    for k, mult in terms:
        v = ev.mzsv(k) if star else ev.mzv(k)
        total = total + v * mult
    return total


def _check_weight(w: int) -> None:
    if w > WEIGHT_CAP:
        raise CapExceededError(f"weight {w} exceeds the cap {WEIGHT_CAP}")


def _partial_acceptances(ev: Evaluator, terms, w: int, qmax: int) -> list[list[tuple[int, ...]]]:
    distinct = [k for k, _ in terms]
    if len(distinct) < 2 or len(distinct) > PARTIAL_SUBSET_CAP:
        return []
    hits = []
    for size in range(1, len(distinct)):
        for subset in itertools.combinations(distinct, size):
            total = _total(ev, [(k, 1) for k in subset])
            if reconstruct_pi_power(total, w, ev.cfg, qmax).accepted:
                hits.append(list(subset))
    return hits


def _conjecture_report(name, params, ev, terms, w, qmax, flag_partials, started) -> ConjectureReport:
    total = _total(ev, terms)
    rec = reconstruct_pi_power(total, w, ev.cfg, qmax)
    partial = _partial_acceptances(ev, terms, w, qmax) if flag_partials else []
    return ConjectureReport(name, params, total, w, rec, list(terms), partial,
                            time.perf_counter() - started)


# --------------------------------------------------------------------------
# symmetric-group orbit sums


def orbit_terms(s: Sequence[int], variant: str) -> list[tuple[tuple[int, ...], int]]:
    """Distinct indices of the orbit sum with their multiplicity in the full group sum."""
    s = _check_entries(s)
    if variant == "conj41":
        if len(s) < 2 or len(s) % 2:
            raise InvalidJVectorError("the even-length orbit sum needs a vector of even length >= 2")
        op = op_plus
    elif variant == "conj43":
        if len(s) % 2 == 0:
            raise InvalidJVectorError("the odd-length orbit sum needs a vector of odd length")
        op = op_superplus
    else:
        raise ValueError(f"unknown variant {variant!r}")
    stabilizer = math.prod(math.factorial(c) for c in Counter(s).values())
    arrangements = sorted(set(itertools.permutations(s)), reverse=True)
    return [(index_from_jvector(op(arr)), stabilizer) for arr in arrangements]


def orbit_terms_bruteforce(s: Sequence[int], variant: str) -> Counter:
    """Multiset of indices from a literal walk over every permutation of positions."""
    s = _check_entries(s)
    op = op_plus if variant == "conj41" else op_superplus
    out: Counter = Counter()
    for sigma in itertools.permutations(range(len(s))):
        out[index_from_jvector(op(tuple(s[i] for i in sigma)))] += 1
    return out


def orbit_pi_power(s: Sequence[int], variant: str) -> int:
    m = sum(s)
    if variant == "conj41":
        return 2 * m + 2 * len(s)
    return 2 * m + 2 * (len(s) - 1) + 2


def orbit_sum(s: Sequence[int], variant: str, cfg: PrecisionConfig = DEFAULT_CONFIG,
              qmax: int = DEFAULT_QMAX, evaluator: Evaluator | None = None,
              flag_partials: bool = True) -> ConjectureReport:
    """Sum of Zbar((sigma S)_+) or Zbar((sigma S)^+) over the whole symmetric group."""
    started = time.perf_counter()
    ev = _ev(cfg, evaluator)
    terms = orbit_terms(s, variant)
    w = orbit_pi_power(s, variant)
    _check_weight(w)
    name = {"conj41": "4.1", "conj43": "4.3"}[variant]
    return _conjecture_report(name, {"S": list(s)}, ev, terms, w, qmax, flag_partials, started)


# --------------------------------------------------------------------------
# star sums over the 3,1 skeleton and their expanded form


def skeleton_terms(n: int, m: int) -> list[tuple[tuple[int, ...], int]]:
    """All indices with 2n skeleton entries and m inserted 2's."""
    return [(index_from_jvector(j), 1) for j in weak_compositions(m, 2 * n + 1)]


def check_thm11(n: int, cfg: PrecisionConfig = DEFAULT_CONFIG, qmax: int = DEFAULT_QMAX,
                evaluator: Evaluator | None = None) -> ConjectureReport:
    """The star sum over j-vectors of length 2n+1 with total 2, against pi^(4n+4)."""
    started = time.perf_counter()
    ev = _ev(cfg, evaluator)
    w = 4 * n + 4
    _check_weight(w)
    return _conjecture_report("thm11", {"n": n}, ev, skeleton_terms(n, 2), w, qmax, False, started)


def check_eq6(n: int, cfg: PrecisionConfig = DEFAULT_CONFIG,
              evaluator: Evaluator | None = None) -> NumericReport:
    """The evaluated (a, b, c) = (3, 1, 2) case of the d-map expansion of z_c^2 ~ (z_a z_b)^n."""
    started = time.perf_counter()
    ev = _ev(cfg, evaluator)
    _check_weight(4 * n + 4)
    zeta = lambda k: ev.mzv((k,))  # noqa: E731
    lhs = _total(ev, skeleton_terms(n, 2))
    rhs = HighPrecReal.exact(0, cfg.working_digits)
    for i in range(n + 1):
        rhs = rhs + _total(ev, skeleton_terms(i, 1)) * zeta(4 * n - 4 * i + 2) * 2
        rhs = rhs + _total(ev, skeleton_terms(i, 2), star=False) * ev.mzsv((4,) * (n - i))
    for i in range(n + 1):
        for j in range(n - i + 1):
            k = n - i - j
            bracket = zeta(4 * j + 2) * zeta(4 * k + 2) - zeta(4 * j + 4 * k + 4)
            rhs = rhs - ev.mzsv(three_ones(i)) * bracket * 2
    for j in range(n + 1):
        # last sum carries zeta(4k+4): z_{(a+b)k+2c} with c = 2
        rhs = rhs - ev.mzsv(three_ones(j)) * zeta(4 * (n - j) + 4)
    return NumericReport("eq6", {"n": n}, lhs, rhs, cfg.tolerance,
                         elapsed=time.perf_counter() - started)


# --------------------------------------------------------------------------
# MZV sums with inserted 2's


def eq1_coefficient(n: int, m: int) -> Fraction:
    return Fraction(math.comb(m + 2 * n, m), (2 * n + 1) * math.factorial(2 * m + 4 * n + 1))


def check_eq1(n: int, m: int, cfg: PrecisionConfig = DEFAULT_CONFIG,
              evaluator: Evaluator | None = None) -> NumericReport:
    """MZV sum with m inserted 2's against C(m+2n, m) pi^(2m+4n) / ((2n+1)(2m+4n+1)!)."""
    if n + m <= 0:
        raise ValueError("need n + m > 0")
    started = time.perf_counter()
    ev = _ev(cfg, evaluator)
    w = 2 * m + 4 * n
    _check_weight(w)
    lhs = _total(ev, skeleton_terms(n, m), star=False)
    rhs = ev.rational_times_pi(eq1_coefficient(n, m), w)
    return NumericReport("eq1", {"n": n, "m": m}, lhs, rhs, cfg.tolerance, relative=True,
                         elapsed=time.perf_counter() - started)


# --------------------------------------------------------------------------
# product identities among star values


def conj45_sides(part: str, n: int, m: int = 0) -> tuple[list, list]:
    """Both sides as lists of ``(coefficient, [index, ...])`` products of star values."""
    part = part.upper()
    if part == "A":
        lhs = [(1, [twos(n) + (3,) + twos(m) + (1,)]), (1, [twos(m) + (3,) + twos(n) + (1,)])]
        rhs = [(1, [twos(n + 1), twos(m + 1)])]
    elif part == "B":
        lhs = [(2 * n + 1, [three_ones(n) + (2,)])]
        rhs = [(1, [three_ones(j), twos(2 * (n - j) + 1)]) for j in range(n + 1)]
    elif part == "C":
        if n < 1:
            raise ValueError("part C needs n >= 1")
        lhs = [(1, [index_from_jvector(op_plus(j))]) for j in weak_compositions(1, 2 * n)]
        rhs = [(1, [three_ones(j) + (2,), twos(2 * (n - 1 - j) + 2)]) for j in range(n)]
    else:
        raise ValueError(f"unknown part {part!r}")
    return lhs, rhs


def _eval_products(ev: Evaluator, side) -> HighPrecReal:
    total = HighPrecReal.exact(0, ev.cfg.working_digits)
    for coeff, factors in side:
        term = HighPrecReal.exact(coeff, ev.cfg.working_digits)
        for k in factors:
            term = term * ev.mzsv(k)
        total = total + term
    return total


def check_conj45(part: str, n: int, m: int = 0, cfg: PrecisionConfig = DEFAULT_CONFIG,
                 evaluator: Evaluator | None = None) -> NumericReport:
    started = time.perf_counter()
    ev = _ev(cfg, evaluator)
    lhs_terms, rhs_terms = conj45_sides(part, n, m)
    params = {"n": n, "m": m} if part.upper() == "A" else {"n": n}
    return NumericReport(f"4.5{part.lower()}", params, _eval_products(ev, lhs_terms),
                         _eval_products(ev, rhs_terms), cfg.tolerance,
                         elapsed=time.perf_counter() - started)


def check_conj45_weight6(cfg: PrecisionConfig = DEFAULT_CONFIG,
                         evaluator: Evaluator | None = None) -> list[NumericReport]:
    """Evaluate the two exact weight-6 identities against the A and B product identities.

    The left side of the first identity evaluates to the A-defect at
    ``{n, m} = {1, 0}``, the second to the B-defect at ``n = 1``; the right
    sides are extended double shuffle combinations and must evaluate to 0.
    """
    ev = _ev(cfg, evaluator)
    (_, lhs_i, rhs_i), (_, lhs_ii, rhs_ii) = weight6_sides()
    a_l, a_r = conj45_sides("A", 1, 0)
    b_l, b_r = conj45_sides("B", 1)
    reports = []
    for name, lhs, rhs, conj_l, conj_r in (("weight6.i~4.5a", lhs_i, rhs_i, a_l, a_r),
                                           ("weight6.ii~4.5b", lhs_ii, rhs_ii, b_l, b_r)):
        started = time.perf_counter()
        defect = _eval_products(ev, conj_l) - _eval_products(ev, conj_r)
        reports.append(NumericReport(f"{name}:lhs", {}, ev.eval_poly(lhs), defect, cfg.tolerance,
                                     elapsed=time.perf_counter() - started))
        zero = HighPrecReal.exact(0, cfg.working_digits)
        reports.append(NumericReport(f"{name}:rhs", {}, ev.eval_poly(rhs), zero, cfg.tolerance))
    return reports


# --------------------------------------------------------------------------
# Bernoulli convolution and the cyclic sum instance


def prop51_exact_sides(n: int) -> tuple[Fraction, Fraction]:
    lhs = (1 - 2 * n) * bernoulli(2 * n) / math.factorial(2 * n)
    rhs = Fraction(0)
    for i in range(n + 1):
        j = n - i
        rhs += ((1 - Fraction(2) ** (1 - 2 * i)) * (1 - Fraction(2) ** (1 - 2 * j))
                * bernoulli(2 * i) * bernoulli(2 * j)
                / (math.factorial(2 * i) * math.factorial(2 * j)))
    return lhs, rhs


@dataclass
class Prop51Report:
    n: int
    exact_lhs: Fraction
    exact_rhs: Fraction
    numeric: NumericReport | None

    @property
    def exact_holds(self) -> bool:
        return self.exact_lhs == self.exact_rhs

    @property
    def holds(self) -> bool:
        return self.exact_holds and (self.numeric is None or self.numeric.holds)

    def to_dict(self) -> dict:
        return {
            "name": "prop51",
            "params": {"n": self.n},
            "exact_lhs": str(self.exact_lhs),
            "exact_rhs": str(self.exact_rhs),
            "exact_holds": self.exact_holds,
            "numeric": self.numeric.to_dict() if self.numeric else None,
            "holds": self.holds,
        }

    def __str__(self) -> str:
        text = f"prop51(n={self.n}): exact {'holds' if self.exact_holds else 'FAILS'}"
        if self.numeric is not None:
            text += f"; numeric {'holds' if self.numeric.holds else 'FAILS'}"
        return text


PROP51_EXACT_MAX = 50
PROP51_NUMERIC_MAX = 4


def check_prop51(n: int, cfg: PrecisionConfig = DEFAULT_CONFIG, numeric: bool | None = None,
                 evaluator: Evaluator | None = None) -> Prop51Report:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > PROP51_EXACT_MAX:
        raise CapExceededError(f"n <= {PROP51_EXACT_MAX} for the exact part")
    lhs, rhs = prop51_exact_sides(n)
    if numeric is None:
        numeric = n <= PROP51_NUMERIC_MAX
    report = None
    if numeric:
        started = time.perf_counter()
        ev = _ev(cfg, evaluator)
        left = [(2, [twos(i) + (3,) + twos(n - i) + (1,)]) for i in range(n + 1)]
        right = [(1, [twos(i + 1), twos(n - i + 1)]) for i in range(n + 1)]
        report = NumericReport("prop51.numeric", {"n": n}, _eval_products(ev, left),
                               _eval_products(ev, right), cfg.tolerance,
                               elapsed=time.perf_counter() - started)
    return Prop51Report(n, lhs, rhs, report)


def check_cyclic_sum_instance(n: int, cfg: PrecisionConfig = DEFAULT_CONFIG,
                              evaluator: Evaluator | None = None) -> NumericReport:
    if not 2 <= n <= 6:
        raise ValueError("cyclic sum instance is checked for 2 <= n <= 6")
    started = time.perf_counter()
    ev = _ev(cfg, evaluator)
    lhs = [(1, [twos(i) + (3,) + twos(n - 2 - i) + (1,)]) for i in range(n - 1)] + [(1, [twos(n)])]
    rhs = ev.mzv((2 * n,)) * (2 * n - 1)
    return NumericReport("cyclic", {"n": n}, _eval_products(ev, lhs), rhs, cfg.tolerance,
                         elapsed=time.perf_counter() - started)
