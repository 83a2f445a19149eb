"""Common preperiodic parameters via modular gcds."""

from fractions import Fraction

import pytest
import sympy

from unicrit.conjsearch import (
    common_preperiodic_params,
    difference_gcd,
    verify_common,
)
from unicrit.errors import PreconditionError
from unicrit.persolve import difference_poly

c = sympy.Symbol("c")


def test_difference_gcd_examples():
    # oracle: exact Euclid over Q via sympy
    pa = difference_poly(0, 2, 3, 1)  # c^2 (c+1)^2
    pb = difference_poly(1, 2, 3, 1)  # c (c+1) (c+2) (c+3)
    got = difference_gcd(pa, pb)
    oracle = sympy.gcd(
        sympy.Poly(list(reversed(pa.coeffs)), c), sympy.Poly(list(reversed(pb.coeffs)), c)
    )
    assert sympy.Poly(list(reversed(got)), c) == sympy.Poly(oracle, c)
    assert got == [0, 1, 1]  # c (c + 1)


def test_difference_gcd_self_and_coprime():
    assert difference_gcd([2, 3, 1], [2, 3, 1]) == [2, 3, 1]
    assert difference_gcd([0, 0, 1], [3, 1]) == [1]


def test_common_params_budget_three():
    rep = common_preperiodic_params(0, 1, 2, 3)
    assert [str(r) for r in rep.rational_roots] == ["-2", "-1", "0"]
    assert all(len(f.coeffs) == 2 for f in rep.factors)  # all linear
    # provenance pairs divide as claimed
    assert verify_common(rep).all_passed


def test_common_params_budget_monotone():
    r3 = set(common_preperiodic_params(0, 1, 2, 3).rational_roots)
    r4 = set(common_preperiodic_params(0, 1, 2, 4).rational_roots)
    assert r3 <= r4


def test_common_params_symmetric():
    r_ab = common_preperiodic_params(0, 1, 2, 4)
    r_ba = common_preperiodic_params(1, 0, 2, 4)
    assert set(r_ab.rational_roots) == set(r_ba.rational_roots)
    assert {f.coeffs for f in r_ab.factors} == {f.coeffs for f in r_ba.factors}


def test_common_params_galois_closure():
    rep = common_preperiodic_params(0, Fraction(1, 2), 2, 4)
    for f in rep.factors:
        assert all(isinstance(x, int) for x in f.coeffs)


def test_common_params_rejects_equal_powers():
    with pytest.raises(PreconditionError):
        common_preperiodic_params(0, 0, 2, 2)
    with pytest.raises(PreconditionError):
        common_preperiodic_params(2, -2, 2, 3)


def test_common_params_degree_cap_partial():
    rep = common_preperiodic_params(0, 1, 2, 6, degree_cap=8)
    assert rep.partial
    assert max(ell for ell, _ in rep.pairs_covered) == 4  # 2^(4-1) = 8 fits
    assert set(str(r) for r in rep.rational_roots) <= {"-2", "-1", "0"}


def test_verify_common_detects_tampering():
    rep = common_preperiodic_params(0, 1, 2, 3)
    bad = rep.__class__(
        a=rep.a,
        b=rep.b,
        d=rep.d,
        lmax=rep.lmax,
        factors=rep.factors,
        rational_roots=rep.rational_roots + (Fraction(7),),
        pairs_covered=rep.pairs_covered,
        partial=rep.partial,
    )
    assert not verify_common(bad).all_passed
