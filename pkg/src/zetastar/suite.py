"""Named verification checks, shared by ``zetastar verify all`` and the tests."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import mpmath

from . import conjectures as cj
from . import identities as idl
from .algebra import NcPoly, dmap, dmap_via_key_identity, h1_words
from .numerics import DEFAULT_CONFIG, HighPrecReal, PrecisionConfig, evaluator_for


@dataclass
class CheckOutcome:
    name: str
    holds: bool
    count: int
    elapsed: float
    failures: list[str]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "holds": self.holds,
            "reports": self.count,
            "elapsed_ms": round(self.elapsed * 1000, 3),
            "failures": self.failures,
        }


def _dmap_agreement(max_weight: int = 8):
    out = []
    for wt in range(max_weight + 1):
        for w in h1_words(wt):
            a, b = dmap(NcPoly.word(w)), dmap_via_key_identity(NcPoly.word(w))
            out.append(idl.IdentityReport("dmap=key", {"word": w or "1"}, a == b, a - b))
    return out


def _eds_numeric(cfg: PrecisionConfig, max_weight: int = 7):
    # defects are checked at 40 digits against 1e-30
    ev = evaluator_for(PrecisionConfig(digits=40, guard=cfg.guard))
    zero = HighPrecReal.exact(0, ev.cfg.working_digits)
    out = []
    for pair in idl.enumerate_eds(max_weight):
        out.append(cj.NumericReport("eds", {"w1": pair.w1, "w0": pair.w0},
                                    ev.eval_poly(pair.defect), zero, mpmath.mpf(10) ** -30))
    return out


def _suite(cfg: PrecisionConfig) -> dict:
    checks: dict = {}
    checks["weight6 exact identities"] = lambda: list(idl.check_weight6_identities())
    checks["dmap double implementation"] = _dmap_agreement
    for name, thunk in idl.grid_checks(4):
        checks[f"identity {name}"] = thunk
    checks["eds defects vanish (weight <= 7)"] = lambda: _eds_numeric(cfg)
    for n in range(3):
        checks[f"thm11 n={n}"] = lambda n=n: [cj.check_thm11(n, cfg)]
        checks[f"eq6 n={n}"] = lambda n=n: [cj.check_eq6(n, cfg)]
    checks["eq1 grid"] = lambda: [cj.check_eq1(n, m, cfg) for n in range(5) for m in range(9)
                                  if n + m > 0 and 4 * n + 2 * m <= 16]
    for s in ((0, 0), (1, 0), (1, 0, 0, 0)):
        checks[f"4.1 S={s}"] = lambda s=s: [cj.orbit_sum(s, "conj41", cfg)]
    for s in ((0,), (0, 0, 0), (1, 0, 0)):
        checks[f"4.3 S={s}"] = lambda s=s: [cj.orbit_sum(s, "conj43", cfg)]
    checks["4.5 A/B/C"] = lambda: (
        [cj.check_conj45("A", n, m, cfg) for n in range(3) for m in range(3)]
        + [cj.check_conj45("B", n, 0, cfg) for n in range(3)]
        + [cj.check_conj45("C", n, 0, cfg) for n in (1, 2)]
        + cj.check_conj45_weight6(cfg))
    checks["prop51"] = lambda: [cj.check_prop51(n, cfg) for n in range(1, cj.PROP51_EXACT_MAX + 1)]
    checks["cyclic sum"] = lambda: [cj.check_cyclic_sum_instance(n, cfg) for n in range(2, 7)]
    return checks


def check_names(cfg: PrecisionConfig = DEFAULT_CONFIG) -> list[str]:
    return list(_suite(cfg))


def _holds(report) -> bool:
    if hasattr(report, "verdict"):
        return report.verdict
    return report.holds


def run_check(name: str, cfg: PrecisionConfig = DEFAULT_CONFIG) -> CheckOutcome:
    started = time.perf_counter()
    reports = _suite(cfg)[name]()
    failures = [str(r) for r in reports if not _holds(r)]
    return CheckOutcome(name, not failures, len(reports), time.perf_counter() - started, failures)


def _run_star(args):
    return run_check(*args)


def run_all(cfg: PrecisionConfig = DEFAULT_CONFIG, jobs: int = 1) -> list[CheckOutcome]:
    names = check_names(cfg)
    if jobs <= 1:
        return [run_check(n, cfg) for n in names]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_star, [(n, cfg) for n in names]))
