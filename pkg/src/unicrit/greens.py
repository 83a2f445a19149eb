"""Archimedean Green's function of the generalized Mandelbrot set M_a,
with certified error bounds, plus the uniformizing map near infinity.

G_a(c) is the escape rate lim d^{-n} log+ |f_c^{n+1}(a)|.  Outside M_a it is
computed to a requested tail bound; inside, 0 is returned exactly for
exactly-detected preperiodic input and otherwise with a rigorous
"unresolved boundedness" error derived from the iteration budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from mpmath import mp, mpf, mpc, workprec

from ._rational import GaussianRational
from .dyncore import _as_d, detect_preperiodic_exact, escape_radius, OrbitStatus
from .errors import BranchAmbiguityError, BudgetError, PrecisionError, PreconditionError

DEFAULT_BUDGET = 2048
_PREC_LADDER = (128, 256, 512, 1024, 2048, 4096)


@dataclass(frozen=True)
class GreenValue:
    """A Green's-function value (natural log units) with a certified error.

    The true value lies in [value - error, value + error] intersected with
    [0, inf).
    """

    value: float
    error: float
    iterations_used: int

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "error": self.error,
            "iterations_used": self.iterations_used,
        }


@dataclass(frozen=True)
class LaurentFit:
    """Truncated Laurent expansion of the uniformizer at infinity.

    coefficients[0] is the leading (degree 1) coefficient, coefficients[1]
    the constant term, then degree -1, -2, ...  fit_residual bounds the max
    deviation of the truncated series from the sampled values on the circle.
    """

    radius_used: float
    coefficients: tuple
    fit_residual: float


class _Ambiguous(Exception):
    """Internal: interval straddles the escape threshold; retry higher prec."""


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, GaussianRational))


def _to_mpc(x) -> mpc:
    if isinstance(x, GaussianRational):
        return mpc(mpf(x.re.numerator) / x.re.denominator,
                   mpf(x.im.numerator) / x.im.denominator)
    if isinstance(x, Fraction):
        return mpc(mpf(x.numerator) / x.denominator, 0)
    z = complex(x)
    return mpc(z.real, z.imag)


def _bounded_error_bound(d: int, n: int, rstar: float, c_abs: float) -> float:
    """Rigorous bound on G when |f^k(a)| <= R* has been certified for k <= n.

    From log+|z^d+c| <= d log+|z| + log+|c| + log 2, telescoping gives
    G <= d^{-n} (log+ R* + (log+|c| + log 2) / (d-1)).
    """
    logc = max(0.0, math.log(c_abs)) if c_abs > 0 else 0.0
    bound = math.log(max(rstar, 1.0)) + (logc + math.log(2.0)) / (d - 1)
    return bound * d ** (-float(n)) if n < 16000 else 0.0


def _escape_rate(w0: mpc, c: mpc, d: int, target_error: float, budget: int):
    """Escape rate lim d^{-k} log |w_k| from w_0, with certified tail bound.

    Returns (value, error, iterations) or raises _Ambiguous / BudgetError.
    w_k carries a running rounding-error radius; all comparisons against the
    escape threshold use the outward-rounded interval.
    """
    u = 8.0 * 2.0 ** (1 - mp.prec)
    c_abs = float(abs(c))
    rstar = escape_radius(c_abs, d)
    w = w0
    err = u * (float(abs(w0)) + 1.0)
    escaped_at = None
    k = 0
    dk = 1.0  # d^k
    while k <= budget:
        m = float(abs(w))
        if escaped_at is None:
            if m - err > rstar:
                escaped_at = k
            elif m + err > rstar:
                raise _Ambiguous
        if escaped_at is not None:
            # per-step tail bound once inside the escape regime
            lo = m - err
            step_bound = math.log1p(c_abs / max(1.0, lo) ** d) / (dk * d)
            tail = step_bound * d / (d - 1)
            if tail <= target_error or not math.isfinite(float(w.real)):
                value = math.log(lo) / dk if lo > 1.0 else 0.0
                val_hi = math.log(m + err) / dk
                num_err = max(val_hi - value, 0.0)
                return value, tail + num_err, k
        if k == budget:
            break
        mhi = m + err
        err = d * mhi ** (d - 1) * err + u * (mhi**d + c_abs + 1.0)
        w = w**d + c
        k += 1
        dk *= d
    if escaped_at is not None:
        raise BudgetError(
            f"escape detected at step {escaped_at} but the tail bound did not "
            f"reach {target_error} within the budget of {budget} iterations"
        )
    return 0.0, _bounded_error_bound(d, budget, rstar, c_abs), budget


def green_param(
    a,
    c,
    d,
    target_error: float = 1e-12,
    budget: int = DEFAULT_BUDGET,
    exact_cap: int = 4096,
) -> GreenValue:
    """Green's function G_a(c) of M_a with a certified error bound.

    For exact (rational / Gaussian-rational) inputs that are detected
    preperiodic, returns exactly 0 with error 0.  Otherwise iterates in
    multiprecision with running error control, escalating the working
    precision until escape or boundedness through the budget is certified.
    """
    d = _as_d(d)
    if target_error <= 0:
        raise PreconditionError("target_error must be positive")
    if _is_exact(a) and _is_exact(c):
        res = detect_preperiodic_exact(a, c, d, cap=exact_cap)
        if res.status is OrbitStatus.PREPERIODIC:
            return GreenValue(0.0, 0.0, (res.tail or 0) + (res.period or 0))
    for prec in _PREC_LADDER:
        with workprec(prec):
            az = _to_mpc(a)
            cz = _to_mpc(c)
            w0 = az**d + cz
            try:
                value, error, iters = _escape_rate(w0, cz, d, target_error, budget)
                return GreenValue(value, error, iters)
            except _Ambiguous:
                continue
    raise PrecisionError(
        "could not certify escape or boundedness even at 4096 bits"
    )


def escape_certificate(c, d) -> float:
    """Certified escape threshold R* = max(3, (2|c|)^(1/d)) for f_c.

    |z| > R* guarantees the orbit of z escapes with per-step growth >= 1.5.
    """
    d = _as_d(d)
    return escape_radius(abs(complex(c)), d)


def _phi_samples(a_c: mpc, d: int, radius: mpf, num: int, term_tol: mpf):
    """Evaluate the uniformizer at num equispaced points on |c| = radius.

    Uses the infinite-product form of the Boettcher coordinate at a^d + c
    with principal d^(n+1)-th roots; factors must stay near 1 (checked).
    Returns (points, values, tail_bound).
    """
    pts = []
    vals = []
    tail_hi = mpf(0)
    for j in range(num):
        cj = radius * mp.expjpi(mpf(2 * j) / num)
        rstar = escape_radius(float(abs(cj)), d)
        z0 = _phi_basepoint(a_c, cj, d)
        if abs(z0) <= rstar:
            raise PreconditionError(
                f"sample {j}: orbit does not escape immediately at radius {radius}"
            )
        phi = z0
        zn = z0
        scale = d  # d^(n+1)
        tail = mpf(0)
        while True:
            w = 1 + cj / zn**d
            if abs(w) <= 0.5:
                raise BranchAmbiguityError(
                    "product factor modulus <= 0.5; principal roots unsafe "
                    "at this radius"
                )
            phi *= mp.exp(mp.log(w) / scale)
            ratio = abs(cj) / abs(zn) ** d
            zn = zn**d + cj
            scale *= d
            if ratio < term_tol:
                # remaining log-factors bounded by geometric series
                tail = 2 * ratio / scale * d / (d - 1)
                break
        tail_hi = max(tail_hi, tail * abs(phi))
        pts.append(cj)
        vals.append(phi)
    return pts, vals, tail_hi


def _phi_basepoint(a_c: mpc, cj: mpc, d: int) -> mpc:
    return a_c**d + cj


def _laurent_from_samples(pts, vals, radius: mpf, num_coeffs: int):
    """Discrete Fourier extraction of Laurent coefficients c_1, c_0, c_-1, ...

    Fixed summation order for determinism.
    """
    n = len(pts)
    out = []
    for idx in range(num_coeffs):
        k = 1 - idx
        acc = mpc(0)
        for j in range(n):
            acc += vals[j] * mp.expjpi(mpf(-2 * j * k) / n)
        acc /= n
        acc /= radius**k
        out.append(acc)
    return out


def uniformizer_series(
    a,
    d,
    num_coeffs: int = 8,
    radius: float = 1e4,
    samples: int = 128,
    consistency_tol: float = 1e-6,
    precision: int = 192,
) -> LaurentFit:
    """Laurent expansion at infinity of the uniformizer c -> phi_c(a^d + c).

    Samples the infinite product on |c| = radius, extracts coefficients by
    discrete Fourier analysis, and cross-checks against a half-radius circle;
    a discrepancy beyond consistency_tol fails the fit.
    """
    d = _as_d(d)
    if num_coeffs < 2:
        raise PreconditionError("need at least the degree-1 and constant terms")
    if samples < 4 * num_coeffs:
        samples = 4 * num_coeffs
    with workprec(precision):
        a_c = _to_mpc(a)
        r = mpf(radius)
        term_tol = mpf(2) ** (-precision // 2)
        pts, vals, tail = _phi_samples(a_c, d, r, samples, term_tol)
        coeffs = _laurent_from_samples(pts, vals, r, num_coeffs)
        # residual of the truncated series against the sampled values
        resid = mpf(0)
        for j, (cj, vj) in enumerate(zip(pts, vals)):
            approx = mpc(0)
            for idx, ck in enumerate(coeffs):
                approx += ck * cj ** (1 - idx)
            resid = max(resid, abs(vj - approx))
        resid += tail
        # half-radius consistency check
        pts2, vals2, _ = _phi_samples(a_c, d, r / 2, samples, term_tol)
        coeffs2 = _laurent_from_samples(pts2, vals2, r / 2, num_coeffs)
        for c1, c2 in zip(coeffs, coeffs2):
            if abs(c1 - c2) > consistency_tol * max(1, abs(c1)):
                raise PrecisionError(
                    "half-radius consistency check failed: Laurent coefficients "
                    f"disagree by {float(abs(c1 - c2)):.3g} (tol {consistency_tol})"
                )
        return LaurentFit(
            radius_used=float(r),
            coefficients=tuple(complex(c) for c in coeffs),
            fit_residual=float(resid),
        )
