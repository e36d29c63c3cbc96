"""Recognize a numeric value as a rational multiple of a power of pi."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import mpmath
from mpmath import mpf

from .errors import PrecisionInsufficientError
from .numerics import DEFAULT_CONFIG, HighPrecReal, PrecisionConfig, pi_power

DEFAULT_QMAX = 10 ** 18


@dataclass(frozen=True)
class ReconstructionResult:
    numerator: int
    denominator: int
    residual: mpf
    accepted: bool
    qmax_used: int
    threshold: mpf
    pi_power: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def to_dict(self) -> dict:
        return {
            "numerator": str(self.numerator),
            "denominator": str(self.denominator),
            "pi_power": self.pi_power,
            "residual": mpmath.nstr(self.residual, 5),
            "threshold": mpmath.nstr(self.threshold, 5),
            "accepted": self.accepted,
            "qmax": str(self.qmax_used),
        }

    def __str__(self) -> str:
        verdict = "accepted" if self.accepted else "rejected"
        return (f"{self.numerator}/{self.denominator} * pi^{self.pi_power} "
                f"(residual {mpmath.nstr(self.residual, 3)}, {verdict})")


def convergents(x: Fraction) -> Iterator[tuple[int, int]]:
    """Continued-fraction convergents ``(p, q)`` of an exact rational."""
    p0, q0, p1, q1 = 0, 1, 1, 0
    num, den = x.numerator, x.denominator
    while den:
        a, rem = divmod(num, den)
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        yield p1, q1
        num, den = den, rem


def _mpf_to_fraction(v: mpf) -> Fraction:
    # man_exp carries the magnitude only
    man, exp = v.man_exp
    if not man:
        return Fraction(0)
    x = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -x if v < 0 else x


def reconstruct_pi_power(
    v: HighPrecReal,
    w: int,
    cfg: PrecisionConfig = DEFAULT_CONFIG,
    qmax: int = DEFAULT_QMAX,
) -> ReconstructionResult:
    """Find ``p/q`` with ``v ~ p/q * pi^w`` using continued-fraction convergents.

    The first convergent with ``q <= qmax`` and ``|v/pi^w - p/q|`` within
    ``max(10^(-digits+guard), 2 err/pi^w)`` is accepted.  On rejection the
    best convergent with ``q <= qmax`` is returned for inspection only.
    """
    if w < 0:
        raise ValueError("pi power must be >= 0")
    dps = max(cfg.working_digits, v.dps) + 10
    with mpmath.workdps(dps):
        pw = pi_power(w, dps)
        if v.err >= mpf(10) ** (-cfg.guard) * pw:
            raise PrecisionInsufficientError(
                f"error bound {mpmath.nstr(v.err, 3)} too large for reconstruction against pi^{w}")
        r = v.value / pw
        threshold = max(cfg.tolerance, 2 * v.err / pw)
        best = None
        for p, q in convergents(_mpf_to_fraction(r)):
            if q > qmax:
                break
            residual = abs(r - mpf(p) / q)
            best = (p, q, residual)
            if residual <= threshold:
                return ReconstructionResult(p, q, residual, True, qmax, threshold, w)
        if best is None:
            p = int(mpmath.nint(r))
            best = (p, 1, abs(r - p))
        return ReconstructionResult(best[0], best[1], best[2], False, qmax, threshold, w)


def value_from_decimal(text: str, cfg: PrecisionConfig = DEFAULT_CONFIG) -> HighPrecReal:
    """Wrap a decimal literal; its error is half a unit in the last printed place."""
    text = text.strip()
    mantissa = text.lower().split("e")[0]
    exponent = int(text.lower().split("e")[1]) if "e" in text.lower() else 0
    decimals = len(mantissa.split(".")[1]) if "." in mantissa else 0
    dps = max(cfg.working_digits, len(mantissa) + 5)
    with mpmath.workdps(dps):
        return HighPrecReal(mpf(text), mpf(10) ** (exponent - decimals) / 2, dps)
