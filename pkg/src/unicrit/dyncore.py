"""Iteration of f_c(z) = z^d + c: exact iterate polynomials, numerically
certified orbits, and exact preperiodicity detection.

Conventions.  The marked-point orbit is a, f_c(a), f_c^2(a), ...  The n-th
iterate polynomial G_n(c) = f_c^n(a) is monic in c of degree d^(n-1), built
from G_1(c) = a^d + c by G_{n+1} = G_n^d + c.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from mpmath import iv

from . import _polyint as P
from ._rational import ExactNumber, GaussianRational, as_gaussian, bit_size
from .errors import BudgetError, DegreeCapError, PrecisionError

DEFAULT_DEGREE_CAP = 1 << 16
DEFAULT_ORBIT_CAP = 4096
ORBIT_BIT_GUARD = 1_000_000  # stop exact iteration once scalars get this large


@dataclass(frozen=True)
class Degree:
    """The family exponent; always an integer >= 2."""

    d: int

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 2:
            raise ValueError("degree must be an integer >= 2")

    def __int__(self) -> int:
        return self.d


def _as_d(d) -> int:
    v = int(d)
    if v < 2:
        raise ValueError("degree must be an integer >= 2")
    return v


@dataclass(frozen=True)
class IteratePoly:
    """Exact dense iterate polynomial G_n(c) = f_c^n(a), lowest degree first.

    Monic of degree d^(n-1); coefficients are ints when a is an integer,
    Fractions otherwise.
    """

    a: Fraction
    d: int
    n: int
    coeffs: tuple

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return P.eval_at(list(self.coeffs), x)


class OrbitStatus(enum.Enum):
    ESCAPED = "escaped"
    BOUNDED_UNRESOLVED = "bounded-unresolved"
    PREPERIODIC = "preperiodic-exact"


@dataclass(frozen=True)
class OrbitResult:
    """Outcome of an orbit computation.

    ESCAPED carries the certified escape step and a (lower bound on the)
    modulus at escape; PREPERIODIC carries the exact minimal tail and period;
    BOUNDED_UNRESOLVED records the exhausted cap.  For function-field orbits
    ESCAPED means "certified not preperiodic" and `place` names the place
    whose valuation locked into the escape regime.
    """

    status: OrbitStatus
    step: Optional[int] = None
    modulus: Optional[float] = None
    tail: Optional[int] = None
    period: Optional[int] = None
    cap: Optional[int] = None
    place: Optional[object] = None
    trace: Optional[tuple] = None

    @property
    def is_preperiodic(self) -> bool:
        return self.status is OrbitStatus.PREPERIODIC

    @property
    def is_escaped(self) -> bool:
        return self.status is OrbitStatus.ESCAPED

    def to_json(self) -> dict:
        out = {"status": self.status.value}
        for key in ("step", "modulus", "tail", "period", "cap"):
            v = getattr(self, key)
            if v is not None:
                out[key] = v
        if self.place is not None:
            out["place"] = str(self.place)
        return out


@lru_cache(maxsize=None)
def _iterate_poly_cached(a: Fraction, d: int, n: int, degree_cap: int):
    if n == 1:
        a_d = a**d
        if a_d.denominator == 1:
            return (a_d.numerator, 1)
        return (a_d, 1)
    prev = list(_iterate_poly_cached(a, d, n - 1, degree_cap))
    out = P.power(prev, d)
    out = P.add(out, [0, 1])
    return tuple(out)


def iterate_poly(a, d, n: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> IteratePoly:
    """Exact iterate polynomial G_n(c) = f_c^n(a) for a rational basepoint.

    Raises DegreeCapError when d^(n-1) exceeds degree_cap (the coefficients
    grow doubly exponentially, so the cap guards memory, not just time).
    """
    d = _as_d(d)
    if n < 1:
        raise ValueError("iteration index must be >= 1")
    a = Fraction(a)
    if d ** (n - 1) > degree_cap:
        raise DegreeCapError(
            f"iterate polynomial degree {d}^{n - 1} exceeds cap {degree_cap}"
        )
    coeffs = _iterate_poly_cached(a, d, n, degree_cap)
    return IteratePoly(a=a, d=d, n=n, coeffs=coeffs)


def escape_radius(c_abs: float, d: int) -> float:
    """Certified escape threshold R* = max(3, (2|c|)^(1/d)).

    Whenever |z| > R*, the next iterate satisfies
    |z^d + c| >= |z|^d - |c| >= |z|^d / 2 >= 1.5 |z|, so the orbit grows
    geometrically and escape is rigorous.
    """
    return max(3.0, (2.0 * c_abs) ** (1.0 / d))


def _iv_abs2(z) -> "iv.mpf":
    return z.real * z.real + z.imag * z.imag


def orbit_numeric(
    a,
    c,
    d,
    max_iter: int = 512,
    working_precision: int = 53,
) -> OrbitResult:
    """Iterate the orbit of a under z^d + c in rounded-interval arithmetic.

    Escape is certified: ESCAPED is returned only when the interval lower
    bound of |z| exceeds the upper bound of the escape threshold.  Orbits
    that stay provably below the threshold for max_iter steps come back
    BOUNDED_UNRESOLVED.  If the intervals get too wide to decide a suspected
    escape, PrecisionError is raised.
    """
    d = _as_d(d)
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    if working_precision < 53:
        raise ValueError("working precision must be at least 53 bits")
    old_prec = iv.prec
    iv.prec = working_precision
    try:
        cz = iv.mpc(complex(c).real, complex(c).imag) if not isinstance(c, iv.mpc) else c
        z = iv.mpc(complex(a).real, complex(a).imag)
        c_abs_hi = float(abs(cz).b)
        rstar = escape_radius(c_abs_hi, d)
        rstar2 = rstar * rstar
        ambiguous = False
        for k in range(1, max_iter + 1):
            z = z**d + cz
            m2 = _iv_abs2(z)
            lo = float(m2.a)
            hi = float(m2.b)
            if lo > rstar2:
                return OrbitResult(
                    status=OrbitStatus.ESCAPED,
                    step=k,
                    modulus=lo**0.5,
                )
            if hi > rstar2:
                ambiguous = True
        if ambiguous:
            raise PrecisionError(
                "interval widths exceed the escape margin; "
                "retry with higher working_precision"
            )
        return OrbitResult(status=OrbitStatus.BOUNDED_UNRESOLVED, cap=max_iter)
    finally:
        iv.prec = old_prec


def detect_preperiodic_exact(
    a: ExactNumber,
    c: ExactNumber,
    d,
    cap: int = DEFAULT_ORBIT_CAP,
    keep_trace: bool = False,
) -> OrbitResult:
    """Exact orbit analysis for rational or Gaussian-rational a and c.

    Returns PREPERIODIC with the minimal tail and period when the exact orbit
    repeats within cap steps, ESCAPED when the exact modulus crosses the
    certified threshold, and BOUNDED_UNRESOLVED otherwise.  Denominator
    growth for d consecutive steps rules out a repeat, so hashing is skipped
    from then on, but it is never converted into an escape certificate.
    """
    d = _as_d(d)
    if cap < 1:
        raise ValueError("cap must be >= 1")
    az = as_gaussian(a)
    cz = as_gaussian(c)
    # escape iff |z| > 3 and |z|^d > 2|c|, compared exactly on squares
    c_abs2 = cz.abs2()
    four_c2 = 4 * c_abs2
    seen = {}
    z = az
    den_prev = None
    growth_streak = 0
    hashing = True
    step = 0
    trace = [] if keep_trace else None
    while step <= cap:
        if trace is not None and len(trace) < 64:
            trace.append(z)
        if hashing:
            key = (z.re, z.im)
            if key in seen:
                tail = seen[key]
                period = step - tail
                return OrbitResult(
                    status=OrbitStatus.PREPERIODIC,
                    tail=tail,
                    period=period,
                    trace=tuple(trace) if trace is not None else None,
                )
            seen[key] = step
        m2 = z.abs2()
        if m2 > 9 and m2**d > four_c2:
            return OrbitResult(
                status=OrbitStatus.ESCAPED,
                step=step,
                modulus=float(m2) ** 0.5,
                trace=tuple(trace) if trace is not None else None,
            )
        if bit_size(z) > ORBIT_BIT_GUARD:
            return OrbitResult(status=OrbitStatus.BOUNDED_UNRESOLVED, cap=step)
        den = max(z.re.denominator, z.im.denominator)
        if den_prev is not None and den > den_prev:
            growth_streak += 1
            if growth_streak >= d:
                hashing = False  # repeats are impossible while denominators grow
        else:
            growth_streak = 0
        den_prev = den
        z = z**d + cz
        step += 1
    return OrbitResult(
        status=OrbitStatus.BOUNDED_UNRESOLVED,
        cap=cap,
        trace=tuple(trace) if trace is not None else None,
    )


def orbit_exact(
    a: ExactNumber, c: ExactNumber, d, steps: int
) -> list[GaussianRational]:
    """The exact orbit [a, f(a), ..., f^steps(a)]."""
    d = _as_d(d)
    az = as_gaussian(a)
    cz = as_gaussian(c)
    out = [az]
    z = az
    for _ in range(steps):
        z = z**d + cz
        out.append(z)
    return out
