"""Exact iteration core: iterate polynomials, certified numeric orbits,
exact preperiodicity detection."""

from fractions import Fraction

import pytest

from unicrit._rational import GaussianRational, parse_exact
from unicrit.dyncore import (
    Degree,
    OrbitStatus,
    detect_preperiodic_exact,
    iterate_poly,
    orbit_numeric,
    orbit_exact,
)
from unicrit.errors import DegreeCapError, PrecisionError
from unicrit import _polyint as P

I = GaussianRational(Fraction(0), Fraction(1))


def test_degree_type_validates():
    assert int(Degree(2)) == 2
    with pytest.raises(ValueError):
        Degree(1)


def test_iterate_poly_forced_examples():
    assert iterate_poly(0, 2, 3).coeffs == (0, 1, 1, 2, 1)  # c + c^2 + 2c^3 + c^4
    assert iterate_poly(1, 2, 2).coeffs == (1, 3, 1)  # 1 + 3c + c^2
    assert iterate_poly(0, 3, 2).coeffs == (0, 1, 0, 1)  # c + c^3


@pytest.mark.parametrize("a,d", [(0, 2), (1, 2), (Fraction(1, 2), 2), (0, 3), (2, 3)])
def test_recurrence_coefficient_exact(a, d):
    for n in range(1, 5):
        g_n = list(iterate_poly(a, d, n).coeffs)
        g_next = iterate_poly(a, d, n + 1).coeffs
        assert tuple(P.add(P.power(g_n, d), [0, 1])) == g_next


def test_monic_and_degree():
    for n in range(1, 7):
        g = iterate_poly(0, 2, n)
        assert g.coeffs[-1] == 1 and g.degree == 2 ** (n - 1)


def test_evaluation_matches_exact_iteration():
    a, d, c = Fraction(1, 2), 2, Fraction(-3, 7)
    orbit = orbit_exact(a, c, d, 6)
    for n in range(1, 7):
        val = iterate_poly(a, d, n)(c)
        assert val == orbit[n].re and orbit[n].im == 0


def test_a_enters_through_a_power_d():
    assert iterate_poly(2, 2, 4).coeffs == iterate_poly(-2, 2, 4).coeffs
    assert iterate_poly(Fraction(1, 3), 4, 3).coeffs == iterate_poly(Fraction(-1, 3), 4, 3).coeffs


def test_integer_coefficients_for_integer_basepoint():
    assert all(isinstance(c, int) for c in iterate_poly(3, 2, 4).coeffs)


def test_degree_cap():
    with pytest.raises(DegreeCapError):
        iterate_poly(0, 2, 40)


def test_detect_examples():
    r = detect_preperiodic_exact(0, -2, 2)
    assert (r.status, r.tail, r.period) == (OrbitStatus.PREPERIODIC, 2, 1)
    r = detect_preperiodic_exact(1, -3, 2)
    assert (r.status, r.tail, r.period) == (OrbitStatus.PREPERIODIC, 0, 2)
    r = detect_preperiodic_exact(0, Fraction(1, 3), 2)
    assert r.status is OrbitStatus.ESCAPED
    # independent oracle: direct exact iteration against the certified
    # threshold |z| > 3 (here max(3, sqrt(2/3)) = 3)
    z, k = Fraction(0), 0
    while z * z <= 9:
        z = z * z + Fraction(1, 3)
        k += 1
    assert r.step == k  # orbit index of the first iterate past the threshold


def test_detect_gaussian_witness():
    r = detect_preperiodic_exact(0, I, 2)
    assert (r.status, r.tail, r.period) == (OrbitStatus.PREPERIODIC, 2, 2)


def test_detect_stability_under_larger_cap():
    r1 = detect_preperiodic_exact(1, -3, 2, cap=16)
    r2 = detect_preperiodic_exact(1, -3, 2, cap=4096)
    assert (r1.tail, r1.period) == (r2.tail, r2.period)


def test_detect_trace():
    r = detect_preperiodic_exact(0, -1, 2, keep_trace=True)
    assert [z.re for z in r.trace[:3]] == [0, -1, 0]


def test_orbit_numeric_bounded_witness():
    r = orbit_numeric(0, 1j, 2, max_iter=200)
    assert r.status is OrbitStatus.BOUNDED_UNRESOLVED


def test_orbit_numeric_escape_witness():
    r = orbit_numeric(1, 1j, 2)
    assert r.status is OrbitStatus.ESCAPED
    assert r.modulus > 3.0  # certified lower bound past the threshold
    # orbit 1 -> 1+i -> 3i -> -9+i crosses at step 3
    assert r.step == 3


def test_orbit_numeric_real_escape():
    r = orbit_numeric(0, 1, 2)
    assert r.status is OrbitStatus.ESCAPED


def test_orbit_numeric_precision_exhaustion():
    # near-parabolic bounded orbit: interval widths at 53 bits eventually
    # straddle the threshold and the run must refuse to classify
    with pytest.raises(PrecisionError):
        orbit_numeric(0, -0.75 + 0.01j, 2, max_iter=400, working_precision=53)
    # at higher precision the same slow orbit resolves to a certified escape
    r = orbit_numeric(0, -0.75 + 0.01j, 2, max_iter=400, working_precision=512)
    assert r.status is OrbitStatus.ESCAPED and r.step == 316


def test_orbit_numeric_interval_trap_certifies_real_window():
    # for real c in the bounded window the interval image traps itself, so
    # even wide intervals certify boundedness forever
    r = orbit_numeric(0, -1.9, 2, max_iter=400, working_precision=53)
    assert r.status is OrbitStatus.BOUNDED_UNRESOLVED


def test_parse_exact_forms():
    assert parse_exact("-7/2").re == Fraction(-7, 2)
    assert parse_exact("i") == I
    assert parse_exact("1/2-3/4i") == GaussianRational(Fraction(1, 2), Fraction(-3, 4))
