"""Certified root sets of difference polynomials."""

from fractions import Fraction

import pytest
import sympy

from unicrit._rational import GaussianRational
from unicrit.dyncore import OrbitStatus, detect_preperiodic_exact
from unicrit.errors import PreconditionError
from unicrit.persolve import (
    difference_poly,
    gaussian_candidate,
    mpf_to_fraction,
    rational_candidate,
    solve_roots,
    verify_root,
)

c = sympy.Symbol("c")


def test_difference_poly_examples():
    assert difference_poly(0, 2, 2, 1).coeffs == (0, 0, 1)  # c^2
    assert difference_poly(0, 2, 3, 1).coeffs == (0, 0, 1, 2, 1)  # c^2 (c+1)^2
    # oracle: exact expansion of (c^2+3c) (c^2+3c+2) = c(c+1)(c+2)(c+3)
    expected = sympy.Poly(sympy.expand(c * (c + 1) * (c + 2) * (c + 3)), c)
    got = sympy.Poly(list(reversed(difference_poly(1, 2, 3, 1).coeffs)), c)
    assert got == expected


def test_difference_poly_monic_degree():
    dp = difference_poly(0, 2, 6, 3)
    assert dp.coeffs[-1] == 1 and dp.degree == 2**5


def test_difference_poly_preconditions():
    with pytest.raises(PreconditionError):
        difference_poly(0, 2, 2, 2)


def test_solve_roots_double_roots():
    rs = solve_roots(difference_poly(0, 2, 3, 1))
    got = sorted(
        ((complex(r.value), r.multiplicity) for r in rs.roots),
        key=lambda t: t[0].real,
    )
    assert [(round(z.real), m) for z, m in got] == [(-1, 2), (0, 2)]
    assert all(r.radius < 1e-20 for r in rs.roots)
    assert rs.total_multiplicity == rs.degree == 4


def test_solve_roots_simple_roots():
    rs = solve_roots(difference_poly(1, 2, 3, 1))
    vals = sorted(round(complex(r.value).real) for r in rs.roots)
    assert vals == [-3, -2, -1, 0]
    assert all(r.multiplicity == 1 for r in rs.roots)


def test_solve_roots_pure_power():
    rs = solve_roots([0, 0, 1])  # c^2
    assert len(rs.roots) == 1
    assert rs.roots[0].multiplicity == 2 and rs.roots[0].radius == 0.0


def test_solve_roots_total_multiplicity():
    rs = solve_roots(difference_poly(0, 2, 5, 2))
    assert rs.total_multiplicity == rs.degree == 16


def test_solve_roots_conjugation_closure():
    rs = solve_roots(difference_poly(0, 2, 4, 1))
    pts = [complex(r.value) for r in rs.roots]
    for z in pts:
        assert any(abs(z.conjugate() - w) < 1e-25 for w in pts)


def test_solve_roots_rational_roots_are_preperiodic():
    rs = solve_roots(difference_poly(0, 2, 5, 1))
    found = 0
    for r in rs.roots:
        q = rational_candidate(r)
        if q is None:
            continue
        found += 1
        res = detect_preperiodic_exact(0, q, 2)
        assert res.status is OrbitStatus.PREPERIODIC
    assert found >= 2  # at least 0 and -1 show up at this budget


def test_solve_roots_deterministic():
    a = solve_roots(difference_poly(0, 2, 4, 2))
    b = solve_roots(difference_poly(0, 2, 4, 2))
    assert [(str(r.value), r.multiplicity, r.radius) for r in a.roots] == [
        (str(r.value), r.multiplicity, r.radius) for r in b.roots
    ]


def test_solve_roots_preconditions():
    with pytest.raises(PreconditionError):
        solve_roots([])
    with pytest.raises(PreconditionError):
        solve_roots([1, 2])  # not monic


def test_verify_root_exact_cases():
    r = verify_root(0, 2, 3, 2, -2)
    assert r.passed and r.exact and r.residual == 0.0
    r = verify_root(0, 2, 2, 1, 0)
    assert r.passed and r.residual == 0.0
    r = verify_root(1, 2, 2, 1, -2)
    assert r.passed and r.residual == 0.0


def test_verify_root_numeric():
    # airplane-ish parameter: a true root of G_4 - G_3 near -1.7549
    rs = solve_roots(difference_poly(0, 2, 4, 3))
    target = min(rs.roots, key=lambda r: abs(complex(r.value) + 1.7549))
    rep = verify_root(0, 2, 4, 3, complex(target.value), tolerance=1e-9)
    assert rep.passed
    rep_bad = verify_root(0, 2, 4, 3, -1.71, tolerance=1e-9)
    assert not rep_bad.passed


def test_mpf_to_fraction_roundtrip():
    from mpmath import mpf

    assert mpf_to_fraction(mpf(0.375)) == Fraction(3, 8)
    assert mpf_to_fraction(mpf(-5)) == -5
    assert mpf_to_fraction(mpf(0)) == 0


def test_gaussian_candidate():
    rs = solve_roots([1, 0, 1])  # c^2 + 1 -> +-i
    cands = sorted(str(gaussian_candidate(r)) for r in rs.roots)
    assert cands == ["-1i", "1i"]
