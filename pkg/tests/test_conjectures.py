from collections import Counter
from fractions import Fraction

import pytest
from mpmath import mpf

from zetastar.conjectures import (
    NumericReport,
    check_conj45,
    check_conj45_weight6,
    check_cyclic_sum_instance,
    check_eq1,
    check_eq6,
    check_prop51,
    check_thm11,
    conj45_sides,
    eq1_coefficient,
    index_from_jvector,
    op_plus,
    op_superplus,
    orbit_sum,
    orbit_terms,
    orbit_terms_bruteforce,
    prop51_exact_sides,
    skeleton_terms,
    weak_compositions,
)
from zetastar.errors import CapExceededError, InvalidJVectorError
from zetastar.numerics import HighPrecReal


@pytest.mark.parametrize("j, k", [((0, 0, 0), (3, 1)), ((1, 0, 2), (2, 3, 1, 2, 2)), ((2,), (2, 2)),
                                  ((0,), ())])
def test_index_from_jvector(j, k):
    assert index_from_jvector(j) == k


def test_jvector_errors():
    with pytest.raises(InvalidJVectorError):
        index_from_jvector((0, 0))
    with pytest.raises(InvalidJVectorError):
        index_from_jvector((1, -1, 0))
    with pytest.raises(InvalidJVectorError):
        op_superplus(())


def test_plus_operators():
    assert op_plus((1, 0)) == (1, 0, 0)
    assert op_plus(()) == (0,)
    assert op_superplus((0,)) == (1,)
    assert op_superplus((0, 1, 2)) == (0, 1, 3)


def test_weak_compositions():
    assert len(list(weak_compositions(2, 3))) == 6
    assert len(list(weak_compositions(2, 5))) == 15


@pytest.mark.parametrize("s, variant", [((0, 0), "conj41"), ((1, 0), "conj41"), ((1, 0, 2, 0), "conj41"),
                                        ((0,), "conj43"), ((1, 0, 0), "conj43"), ((2, 1, 0), "conj43")])
def test_orbit_terms_match_bruteforce(s, variant):
    grouped = Counter()
    for k, mult in orbit_terms(s, variant):
        grouped[k] += mult
    assert grouped == orbit_terms_bruteforce(s, variant)


def test_orbit_terms_examples():
    assert orbit_terms((0, 0), "conj41") == [((3, 1), 2)]
    assert sorted(k for k, _ in orbit_terms((1, 0), "conj41")) == [(2, 3, 1), (3, 2, 1)]
    assert orbit_terms((0, 0, 0), "conj43") == [((3, 1, 2), 6)]


@pytest.mark.parametrize("s, variant, q", [
    ((0, 0), "conj41", Fraction(1, 36)),
    ((1, 0), "conj41", Fraction(7, 2160)),
    ((0,), "conj43", Fraction(1, 6)),
    ((0, 0, 0), "conj43", Fraction(11, 1260)),
    ((1, 0, 0), "conj43", Fraction(871, 907200)),
])
def test_orbit_sums(s, variant, q, cfg50):
    rep = orbit_sum(s, variant, cfg50)
    assert rep.verdict and rep.reconstruction.fraction == q


def test_orbit_sum_weight_cap(cfg50):
    with pytest.raises(CapExceededError):
        orbit_sum((5, 0, 0, 0), "conj41", cfg50)


def test_thm11(cfg50):
    assert len(skeleton_terms(1, 2)) == 6
    rep = check_thm11(0, cfg50)
    assert rep.verdict and rep.reconstruction.fraction == Fraction(7, 360)
    rep = check_thm11(1, cfg50)
    assert rep.verdict and rep.reconstruction.fraction == Fraction(131, 129600)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_eq6_matches_thm11_sum(n, cfg50):
    rep = check_eq6(n, cfg50)
    assert rep.holds
    assert rep.lhs.value == check_thm11(n, cfg50).value.value


def test_eq1(cfg50):
    assert eq1_coefficient(1, 0) == Fraction(1, 360)
    assert eq1_coefficient(0, 2) == Fraction(1, 120)
    for n, m in [(1, 0), (0, 3), (1, 2), (2, 1)]:
        assert check_eq1(n, m, cfg50).holds


def test_conj45_sides_shape():
    lhs, rhs = conj45_sides("B", 0)
    assert lhs == [(1, [(2,)])] or sum(c for c, _ in lhs) == 1


@pytest.mark.parametrize("part, n, m", [("A", 0, 1), ("A", 1, 1), ("A", 2, 0), ("B", 1, 0), ("B", 2, 0),
                                        ("C", 1, 0)])
def test_conj45(part, n, m, cfg50):
    assert check_conj45(part, n, m, cfg50).holds


def test_conj45_weight6_cross_check(cfg50):
    assert all(r.holds for r in check_conj45_weight6(cfg50))


def test_prop51():
    assert prop51_exact_sides(1) == (Fraction(-1, 12), Fraction(-1, 12))
    for n in range(1, 51):
        lhs, rhs = prop51_exact_sides(n)
        assert lhs == rhs


def test_prop51_numeric(cfg50):
    assert check_prop51(2, cfg50).holds
    with pytest.raises(CapExceededError):
        check_prop51(51, cfg50)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cyclic_sum(n, cfg50):
    assert check_cyclic_sum_instance(n, cfg50).holds


def test_perturbed_numeric_report_fails(cfg50):
    rep = check_eq1(1, 0, cfg50)
    lhs = rep.lhs
    bumped = HighPrecReal(lhs.value + mpf(10) ** -35, lhs.err, lhs.dps)
    bad = NumericReport("eq1", rep.parameters, bumped, rep.rhs, rep.tolerance, relative=True)
    assert not bad.holds
    assert "FAILS" in str(bad)
