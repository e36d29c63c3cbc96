"""Exact verification of the polynomial identities in the Hoffman algebra.

Every check builds both sides as :class:`~zetastar.algebra.NcPoly` values and
reports their difference; an identity holds iff the difference is zero.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .algebra import NcPoly, Word, as_poly, dmap, h0_words, h1_words, in_h0, in_h1
from .errors import CapExceededError, NotInH0Error, NotInH1Error
from .products import harmonic, reg_shuffle, shuffle, tilde

DEFAULT_GRID = ((3, 1, 2), (1, 1, 1), (2, 3, 1), (2, 2, 2))
EDS_WEIGHT_CAP = 8


@dataclass
class IdentityReport:
    name: str
    parameters: dict
    holds: bool
    difference: NcPoly
    elapsed: float = 0.0
    detail: dict = field(default_factory=dict)

    def difference_terms(self, limit: int = 10) -> list[str]:
        return [f"{c} {w or '1'}" for w, c in self.difference.items()[:limit]]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "params": self.parameters,
            "holds": self.holds,
            "difference": self.difference_terms(),
            "difference_size": len(self.difference),
            "elapsed_ms": round(self.elapsed * 1000, 3),
        }

    def __str__(self) -> str:
        status = "holds" if self.holds else "FAILS"
        params = ", ".join(f"{k}={v}" for k, v in self.parameters.items())
        text = f"{self.name}({params}): {status}"
        if not self.holds:
            text += "\n  difference: " + " ; ".join(self.difference_terms())
        return text


def _report(name: str, params: dict, lhs: NcPoly, rhs: NcPoly, started: float) -> IdentityReport:
    diff = lhs - rhs
    return IdentityReport(name, params, diff.is_zero(), diff, time.perf_counter() - started)


# --------------------------------------------------------------------------
# building blocks


def zw(*ks: int) -> NcPoly:
    return NcPoly.zword(*ks)


def _sum(polys) -> NcPoly:
    total = NcPoly.zero()
    for p in polys:
        total = total + p
    return total


def _pairs(n: int) -> Iterator[tuple[int, int]]:
    return ((i, n - i) for i in range(n + 1)) if n >= 0 else iter(())


def _triples(n: int) -> Iterator[tuple[int, int, int]]:
    for i in range(n + 1):
        for j in range(n - i + 1):
            yield i, j, n - i - j


@dataclass(frozen=True)
class WordFamilyParams:
    a: int
    b: int
    c: int
    i: int = 0
    j: int = 0
    k: int = 0

    def __post_init__(self):
        if min(self.a, self.b, self.c) < 1 or min(self.i, self.j, self.k) < 0:
            raise ValueError(f"invalid family parameters {self}")


def build_family(which: str, p: WordFamilyParams) -> NcPoly:
    """The words A_{i,j}, B_{i,j}, C_{i,j,k}, ..., F_{i,j,k} for fixed (a, b, c)."""
    ab = zw(p.a, p.b)
    ba = zw(p.b, p.a)
    za, zb, zc = zw(p.a), zw(p.b), zw(p.c)
    i, j, k = p.i, p.j, p.k
    builders = {
        "A": lambda: ab ** i * zc * ab ** j,
        "B": lambda: ba ** i * zc * ba ** j * zb,
        "C": lambda: ab ** i * zc * ab ** j * zc * ab ** k,
        "D": lambda: ab ** i * zc * ab ** j * za * zc * ba ** k * zb,
        "E": lambda: ba ** i * zc * ba ** j * zb * zc * ab ** k,
        "F": lambda: ba ** i * zc * ba ** j * zc * ba ** k * zb,
    }
    try:
        return builders[which.upper()]()
    except KeyError:
        raise ValueError(f"unknown family {which!r}") from None


class _Families:
    def __init__(self, a: int, b: int, c: int):
        self.a, self.b, self.c = a, b, c

    def __getattr__(self, name):
        if len(name) != 1 or name not in "ABCDEF":
            raise AttributeError(name)
        return lambda i, j, k=0: build_family(name, WordFamilyParams(self.a, self.b, self.c, i, j, k))


# --------------------------------------------------------------------------
# tilde products expanded into A-F words


def eq7_sides(n: int, a: int, b: int, c: int) -> list[tuple[str, NcPoly, NcPoly]]:
    f = _Families(a, b, c)
    ab, za, zb, zc = zw(a, b), zw(a), zw(b), zw(c)
    zc2 = zc * zc
    first = (
        "eq7.1",
        tilde(zc, ab ** n),
        _sum(f.A(i, j) for i, j in _pairs(n)) + _sum(za * f.B(i, j) for i, j in _pairs(n - 1)),
    )
    second = (
        "eq7.2",
        tilde(zc, zb * ab ** n),
        _sum(zb * f.A(i, j) for i, j in _pairs(n)) + _sum(f.B(i, j) for i, j in _pairs(n)),
    )
    third = (
        "eq7.3",
        tilde(zc2, ab ** n),
        _sum(f.C(*t) for t in _triples(n))
        + _sum(f.D(*t) for t in _triples(n - 1))
        + _sum(za * f.E(*t) for t in _triples(n - 1))
        + _sum(za * f.F(*t) for t in _triples(n - 1)),
    )
    fourth = (
        "eq7.4",
        tilde(zc2, zb * ab ** n),
        _sum(zb * f.C(*t) for t in _triples(n))
        + _sum(zb * f.D(*t) for t in _triples(n - 1))
        + _sum(f.E(*t) for t in _triples(n))
        + _sum(f.F(*t) for t in _triples(n)),
    )
    return [first, second, third, fourth]


def check_eq7(n: int, a: int, b: int, c: int) -> list[IdentityReport]:
    reports = []
    for name, lhs_fn, rhs in eq7_sides(n, a, b, c):
        started = time.perf_counter()
        reports.append(_report(name, {"n": n, "a": a, "b": b, "c": c}, lhs_fn, rhs, started))
    return reports


# --------------------------------------------------------------------------
# d-map expansions of tilde products


def _theorem21_sides(n: int, a: int, b: int, c: int, with_zb: bool) -> tuple[NcPoly, NcPoly]:
    ab, zc = zw(a, b), zw(c)
    head = zw(b) if with_zb else NcPoly.one()
    s = a + b

    def base(j: int) -> NcPoly:
        return head * ab ** j

    lhs = dmap(tilde(zc * zc, base(n)))
    rhs = (
        _sum(harmonic(dmap(tilde(zc, base(j))), zw(s * k + c)) for j, k in _pairs(n)) * 2
        + _sum(harmonic(tilde(zc * zc, base(j)), dmap(zw(s) ** k)) for j, k in _pairs(n))
        - _sum(harmonic(dmap(base(i)), zw(s * j + c, s * k + c)) for i, j, k in _triples(n)) * 4
        - _sum(harmonic(dmap(base(j)), zw(s * k + 2 * c)) for j, k in _pairs(n))
    )
    return lhs, rhs


def check_alpha(n: int, a: int, b: int, c: int) -> IdentityReport:
    """(alpha_n): d(z_c^2 ~ (z_a z_b)^n) against its four-sum expansion."""
    started = time.perf_counter()
    lhs, rhs = _theorem21_sides(n, a, b, c, with_zb=False)
    return _report("alpha", {"n": n, "a": a, "b": b, "c": c}, lhs, rhs, started)


def check_beta(n: int, a: int, b: int, c: int) -> IdentityReport:
    """(beta_n): as (alpha_n) with z_b (z_a z_b)^n."""
    started = time.perf_counter()
    lhs, rhs = _theorem21_sides(n, a, b, c, with_zb=True)
    return _report("beta", {"n": n, "a": a, "b": b, "c": c}, lhs, rhs, started)


def check_eq59(n: int, a: int, b: int, c: int) -> IdentityReport:
    started = time.perf_counter()
    ab, zc, s = zw(a, b), zw(c), a + b
    lhs = dmap(tilde(zc, ab ** n))
    rhs = (
        _sum(harmonic(dmap(ab ** j), zw(s * k + c)) for j, k in _pairs(n)) * 2
        - _sum(harmonic(tilde(zc, ab ** j), dmap(zw(s) ** k)) for j, k in _pairs(n))
    )
    return _report("eq59", {"n": n, "a": a, "b": b, "c": c}, lhs, rhs, started)


def check_eq23(l: int, a: int, b: int) -> IdentityReport:
    """d(z_{a+b}^l) = sum_{i+k=l-1} z_{(a+b)(i+1)} d(z_{a+b}^k), l >= 1."""
    started = time.perf_counter()
    s = a + b
    lhs = dmap(zw(s) ** l)
    rhs = _sum(zw(s * (i + 1)) * dmap(zw(s) ** k) for i, k in _pairs(l - 1))
    return _report("eq23", {"l": l, "a": a, "b": b}, lhs, rhs, started)


def check_eq24(l: int, a: int, b: int) -> IdentityReport:
    """Unfolding of d((z_a z_b)^l) by its leading blocks, l >= 1."""
    started = time.perf_counter()
    ab, zb, s = zw(a, b), zw(b), a + b
    lhs = dmap(ab ** l)
    rhs = (
        _sum(zw(s * i + a) * dmap(zb * ab ** j) for i, j in _pairs(l - 1))
        + _sum(zw(s * (i + 1)) * dmap(ab ** j) for i, j in _pairs(l - 1))
    )
    return _report("eq24", {"l": l, "a": a, "b": b}, lhs, rhs, started)


# --------------------------------------------------------------------------
# extended double shuffle


def eds_defect(w1, w0) -> NcPoly:
    """reg(w1 sh w0 - w1 * w0), an element of H^0 killed by the evaluation map."""
    w1, w0 = as_poly(w1), as_poly(w0)
    for w in w1.terms:
        if not in_h1(w):
            raise NotInH1Error(f"w1 term {w!r} is not in H^1")
    for w in w0.terms:
        if not in_h0(w):
            raise NotInH0Error(f"w0 term {w!r} is not in H^0")
    return reg_shuffle(shuffle(w1, w0) - harmonic(w1, w0))


def _r(u: str, v: str) -> NcPoly:
    # reg(u * v - u sh v), as printed in the weight-6 identities
    return reg_shuffle(harmonic(u, v) - shuffle(u, v))


def weight6_sides() -> list[tuple[str, NcPoly, NcPoly]]:
    d = dmap
    first = (
        "weight6.i",
        d(zw(2, 3, 1)) + d(zw(3, 2, 1)) - harmonic(d(zw(2, 2)), d(zw(2))),
        -_r("xy", "yxxy") - _r("xxy", "xxy") - _r("xxy", "xyy") + 4 * _r("xxxy", "yy")
        + 2 * _r("xxxxy", "y") - 5 * _r("xxxyy", "y") + 2 * _r("xxyxy", "y") + 5 * _r("xyxxy", "y"),
    )
    second = (
        "weight6.ii",
        3 * d(zw(3, 1, 2)) - harmonic(d(zw(3, 1)), d(zw(2))) - d(zw(2, 2, 2)),
        -_r("xxy", "xyy") + _r("xxyy", "xy") + 2 * _r("xxxy", "yy") + _r("xxxxy", "y")
        + 2 * _r("xxxyy", "y") + 2 * _r("xxyxy", "y") + 2 * _r("xyxxy", "y"),
    )
    return [first, second]


def check_weight6_identities() -> tuple[IdentityReport, IdentityReport]:
    reports = []
    for name, lhs, rhs in weight6_sides():
        started = time.perf_counter()
        reports.append(_report(name, {"weight": 6}, lhs, rhs, started))
    return tuple(reports)


@dataclass(frozen=True)
class EdsPair:
    w1: Word
    w0: Word
    defect: NcPoly


def enumerate_eds(max_weight: int, cap: int = EDS_WEIGHT_CAP) -> list[EdsPair]:
    """Defects for all word pairs (w1 in H^1, w0 in H^0) of total weight <= max_weight.

    Unit words are excluded since both products act trivially on them.
    """
    if max_weight > cap:
        raise CapExceededError(f"max_weight {max_weight} exceeds cap {cap}")
    out = []
    for total in range(3, max_weight + 1):
        for wt0 in range(2, total):
            for w0 in h0_words(wt0):
                for w1 in h1_words(total - wt0):
                    out.append(EdsPair(w1, w0, eds_defect(w1, w0)))
    return out


# --------------------------------------------------------------------------
# suite


def grid_checks(max_n: int = 4, grid=DEFAULT_GRID) -> list[tuple[str, Callable[[], list[IdentityReport]]]]:
    """Named thunks covering alpha/beta, the A-F expansions and the d-map unfoldings."""
    checks = []
    for a, b, c in grid:
        for n in range(max_n + 1):
            checks.append((f"alpha n={n} abc={a},{b},{c}", lambda n=n, a=a, b=b, c=c: [check_alpha(n, a, b, c)]))
            checks.append((f"beta n={n} abc={a},{b},{c}", lambda n=n, a=a, b=b, c=c: [check_beta(n, a, b, c)]))
            checks.append((f"eq7 n={n} abc={a},{b},{c}", lambda n=n, a=a, b=b, c=c: check_eq7(n, a, b, c)))
            checks.append((f"eq59 n={n} abc={a},{b},{c}", lambda n=n, a=a, b=b, c=c: [check_eq59(n, a, b, c)]))
        for l in range(1, max_n + 1):
            checks.append((f"eq23 l={l} ab={a},{b}", lambda l=l, a=a, b=b: [check_eq23(l, a, b)]))
            checks.append((f"eq24 l={l} ab={a},{b}", lambda l=l, a=a, b=b: [check_eq24(l, a, b)]))
    return checks
