"""Green's function values with certified errors, and the uniformizer fit."""

import math
from fractions import Fraction

import pytest
from mpmath import mp, mpf, log, workprec

from unicrit.errors import BranchAmbiguityError, PreconditionError
from unicrit.greens import escape_certificate, green_param, uniformizer_series


def escape_rate_oracle(c, steps=60, prec=500):
    """Independent multiprecision oracle: d^-n log z_{n+1} for z_{n+1} = z_n^2 + c,
    starting the orbit at z_1 = c (marked point 0)."""
    with workprec(prec):
        z = mpf(c)
        for _ in range(steps):
            z = z * z + c
        return float(log(abs(z)) / mpf(2) ** steps)


def test_escape_certificate_values():
    assert escape_certificate(0, 2) == 3.0
    assert escape_certificate(32, 2) == 8.0
    assert abs(escape_certificate(1000, 3) - 2000 ** (1 / 3)) < 1e-12


def test_green_zero_exact_for_preperiodic():
    g = green_param(0, -1, 2)
    assert g.value == 0.0 and g.error == 0.0


def test_green_outside_value_against_oracle():
    oracle = escape_rate_oracle(2)
    g = green_param(0, 2, 2)
    assert abs(g.value - oracle) <= g.error + 1e-13
    assert g.value >= 0 and g.error >= 0


def test_green_capacity_asymptotics():
    gap8 = abs(green_param(0, 1e8, 2, target_error=1e-9).value - math.log(1e8))
    gap4 = abs(green_param(0, 1e4, 2, target_error=1e-9).value - math.log(1e4))
    assert gap8 < 1e-6
    assert gap8 < gap4


def test_green_root_of_unity_twist_exact():
    for c in (0.4 + 0.2j, 2.0, -3.0):
        assert green_param(1, c, 2).value == green_param(-1, c, 2).value


def test_green_error_monotone_in_target():
    loose = green_param(0, 1.5, 2, target_error=1e-4)
    tight = green_param(0, 1.5, 2, target_error=1e-12)
    assert tight.error <= loose.error
    assert tight.iterations_used >= loose.iterations_used


def test_green_bounded_unresolved_reports_budget_error():
    # non-preperiodic bounded input: value 0 with the rigorous budget bound
    g = green_param(0, Fraction(-3, 16), 2, budget=256)
    assert g.value == 0.0 and 0 < g.error < 1e-60


def test_green_rejects_nonpositive_target():
    with pytest.raises(PreconditionError):
        green_param(0, 2, 2, target_error=0.0)


def test_uniformizer_leading_and_constant():
    fit0 = uniformizer_series(0, 2, 8, 1e4)
    assert abs(fit0.coefficients[0] - 1) <= 1e-6 + fit0.fit_residual
    fit1 = uniformizer_series(1, 2, 8, 1e4)
    # the constant terms differ by the difference of the d-th powers
    assert abs((fit1.coefficients[1] - fit0.coefficients[1]) - 1) < 1e-3


def test_uniformizer_depends_on_a_power_d_only():
    fit_a = uniformizer_series(2, 2, 6, 1e4)
    fit_b = uniformizer_series(-2, 2, 6, 1e4)
    assert fit_a.coefficients == fit_b.coefficients


def test_uniformizer_small_radius_rejected():
    with pytest.raises((PreconditionError, BranchAmbiguityError)):
        uniformizer_series(0, 2, 8, 1.2)
