from fractions import Fraction

import mpmath
import pytest
from mpmath import mpf

from zetastar.errors import PrecisionInsufficientError
from zetastar.numerics import Evaluator, HighPrecReal, PrecisionConfig, mzsv, mzv_fast
from zetastar.reconstruct import convergents, reconstruct_pi_power, value_from_decimal


def test_convergents():
    assert list(convergents(Fraction(355, 113))) == [(3, 1), (22, 7), (355, 113)]
    assert list(convergents(Fraction(0))) == [(0, 1)]


@pytest.mark.parametrize("k, q", [((3, 1), Fraction(1, 72)), ((2, 2), Fraction(7, 360))])
def test_star_values(k, q, cfg50):
    res = reconstruct_pi_power(mzsv(k, cfg50), 4, cfg50)
    assert res.accepted and res.fraction == q


def test_euler_value(cfg50):
    res = reconstruct_pi_power(mzv_fast((4,), cfg50), 4, cfg50)
    assert res.accepted and res.fraction == Fraction(1, 90)


def test_zero(cfg50):
    v = HighPrecReal(mpf(0), mpf(10) ** -40, 60)
    res = reconstruct_pi_power(v, 6, cfg50)
    assert res.accepted and (res.numerator, res.denominator) == (0, 1)


def test_odd_zeta_is_rejected(cfg50):
    res = reconstruct_pi_power(mzv_fast((3,), cfg50), 3, cfg50)
    assert not res.accepted
    assert res.denominator <= res.qmax_used


def test_small_qmax_rejects(cfg50):
    res = reconstruct_pi_power(mzsv((2, 2), cfg50), 4, cfg50, qmax=100)
    assert not res.accepted


def test_large_error_raises(cfg50):
    v = HighPrecReal(mpf(1), mpf("1e-3"), 60)
    with pytest.raises(PrecisionInsufficientError):
        reconstruct_pi_power(v, 2, cfg50)


def test_threshold_follows_reported_error():
    cfg = PrecisionConfig(digits=50)
    with mpmath.workdps(60):
        v = HighPrecReal(mpf(7) / 360 * mpmath.pi ** 4 + mpf("1e-20"), mpf("1e-19"), 60)
    res = reconstruct_pi_power(v, 4, cfg)
    assert res.accepted and res.fraction == Fraction(7, 360)
    assert res.threshold > cfg.tolerance


def test_value_from_decimal():
    v = value_from_decimal("0.27058080842778454787900092413529197569368773797968")
    assert abs(v.err / (mpf(10) ** -50 / 2) - 1) < mpf(10) ** -10
    res = reconstruct_pi_power(v, 4)
    assert res.fraction == Fraction(1, 360)


def test_report_serialization(cfg50):
    d = reconstruct_pi_power(Evaluator(cfg50).mzsv((3, 1)), 4, cfg50).to_dict()
    assert d["numerator"] == "1" and d["denominator"] == "72" and d["accepted"] is True
    assert isinstance(d["residual"], str)


def test_negative_values(cfg50):
    v = Evaluator(cfg50).rational_times_pi(Fraction(-3, 7), 2)
    res = reconstruct_pi_power(v, 2, cfg50)
    assert res.accepted and res.fraction == Fraction(-3, 7)
