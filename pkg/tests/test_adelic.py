"""Adelic heights over Q: exact p-adic local values, the height identity,
and Galois-orbit heights."""

import math
import random
from fractions import Fraction

import pytest
from mpmath import mp, mpf, log, workprec

from unicrit.adelic import (
    PlaceStatus,
    adelic_height,
    canonical_height_point,
    galois_orbit_height,
    local_green_nonarch,
    product_formula_holds,
    vp_fraction,
)
from unicrit.dyncore import OrbitStatus, detect_preperiodic_exact
from unicrit.errors import PreconditionError


def test_local_green_examples():
    r = local_green_nonarch(0, Fraction(1, 3), 3, 2)
    assert r.q == 1 and r.status is PlaceStatus.EXACT_POSITIVE
    r = local_green_nonarch(0, -1, 7, 2)
    assert r.q == 0 and r.status is PlaceStatus.EXACT_ZERO
    r = local_green_nonarch(Fraction(1, 2), 0, 2, 2)
    assert r.q == 2 and r.status is PlaceStatus.EXACT_POSITIVE


def test_local_green_cancellation_fixed_point():
    # 1/2 is fixed by z^2 + 1/4: perpetual 2-adic cancellation, resolved by
    # the exact-cycle shortcut rather than by digit iteration
    r = local_green_nonarch(Fraction(1, 2), Fraction(1, 4), 2, 2)
    assert r.q == 0 and r.status is PlaceStatus.EXACT_ZERO


def test_local_green_nonnegative_random():
    rng = random.Random(5)
    for _ in range(25):
        a = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        c = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        p = rng.choice([2, 3, 5])
        r = local_green_nonarch(a, c, p, 2)
        if r.q is not None:
            assert r.q >= 0
            # denominators divide a power of d
            den = r.q.denominator
            while den % 2 == 0:
                den //= 2
            assert den == 1


def test_adelic_height_zero_trio():
    for c in (0, -1, -2):
        h = adelic_height(0, c, 2)
        assert h.value == 0.0 and h.error == 0.0
        assert all(r.status is PlaceStatus.EXACT_ZERO for r in h.places)


def test_adelic_height_c1_against_oracle():
    # oracle: 40-step multiprecision escape-rate iteration of the orbit of 0
    with workprec(400):
        z = mpf(1)
        for _ in range(40):
            z = z * z + 1
        oracle = float(log(z) / mpf(2) ** 40)
    h = adelic_height(0, 1, 2)
    assert abs(h.value - oracle) <= h.error + 1e-12


def test_adelic_height_denominator_prime():
    h = adelic_height(0, Fraction(1, 3), 2)
    nonarch = [r for r in h.places if not r.place.is_archimedean]
    assert len(nonarch) == 1 and nonarch[0].q == 1 and nonarch[0].place.p == 3
    arch = [r for r in h.places if r.place.is_archimedean][0]
    assert 0 < arch.green.value < 0.1
    assert abs(h.value - (math.log(3) + arch.green.value)) < 1e-12


def test_height_identity_param_vs_point():
    rng = random.Random(42)
    for _ in range(25):
        a = Fraction(rng.randint(-20, 20), rng.randint(1, 20))
        c = Fraction(rng.randint(-20, 20), rng.randint(1, 20))
        d = rng.choice([2, 3])
        h = adelic_height(a, c, d, arch_error=1e-11)
        hp = canonical_height_point(c, a, d, arch_error=1e-11)
        assert not h.partial and not hp.partial
        assert abs(h.value - d * hp.value) <= 1e-8 + h.error + d * hp.error
        # non-archimedean parts match exactly as rationals
        qs_h = {r.place.p: r.q for r in h.places if not r.place.is_archimedean}
        qs_p = {r.place.p: r.q for r in hp.places if not r.place.is_archimedean}
        for p, q in qs_h.items():
            assert q == d * qs_p[p]


def test_zero_height_iff_preperiodic_on_finite_set():
    for cval in (Fraction(0), Fraction(-1), Fraction(-2), Fraction(1),
                 Fraction(2), Fraction(-3), Fraction(1, 3), Fraction(-1, 2)):
        h = adelic_height(0, cval, 2)
        all_exact_zero = all(r.status is PlaceStatus.EXACT_ZERO for r in h.places)
        pre = detect_preperiodic_exact(0, cval, 2).status is OrbitStatus.PREPERIODIC
        assert all_exact_zero == pre


def test_canonical_height_of_two_under_squaring():
    h = canonical_height_point(0, 2, 2)
    assert abs(h.value - math.log(2)) <= h.error + 1e-12


def test_product_formula_random():
    rng = random.Random(9)
    for _ in range(30):
        x = Fraction(rng.randint(-400, 400) or 7, rng.randint(1, 400))
        assert product_formula_holds(x)
    with pytest.raises(PreconditionError):
        product_formula_holds(0)


def test_vp():
    assert vp_fraction(Fraction(12), 2) == 2
    assert vp_fraction(Fraction(1, 9), 3) == -2
    assert vp_fraction(Fraction(0), 5) == math.inf


def test_galois_orbit_height_preperiodic_product():
    # P = c (c+1) (c+2): all roots preperiodic for the marked point 0
    h = galois_orbit_height(0, [0, 2, 3, 1], 2)
    assert h.value == 0.0 and not h.partial
    assert h.places[0].status is PlaceStatus.EXACT_ZERO


def test_galois_orbit_height_singleton_matches_adelic():
    h1 = galois_orbit_height(0, [-1, 1], 2)  # P = c - 1
    h2 = adelic_height(0, 1, 2)
    assert abs(h1.value - h2.value) <= h1.error + h2.error + 1e-10


def test_galois_orbit_height_gaussian_pair():
    h = galois_orbit_height(0, [1, 0, 1], 2)  # P = c^2 + 1, roots +-i
    assert h.value == 0.0
    assert h.places[0].status is PlaceStatus.EXACT_ZERO


def test_galois_orbit_height_with_denominator():
    # marked point 1/2: the prime 2 contributes through the resultants
    h = galois_orbit_height(Fraction(1, 2), [-1, 1], 2)  # singleton c = 1
    direct = adelic_height(Fraction(1, 2), 1, 2)
    assert not h.partial
    assert abs(h.value - direct.value) <= h.error + direct.error + 1e-9


def test_galois_orbit_height_rejects_non_squarefree():
    with pytest.raises(PreconditionError):
        galois_orbit_height(0, [0, 0, 1], 2)  # c^2
