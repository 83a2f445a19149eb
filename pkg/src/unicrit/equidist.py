"""Empirical equidistribution checks for root measures of G_l - G_m.

The weak-* convergence of the root measures toward the equilibrium measure
of M_a is tested through exterior potentials: on a circle outside M_a, the
normalized log of the monic difference polynomial IS the potential of its
root measure, and the potential of the equilibrium measure is exactly the
Green's function (capacity 1).  No root finding or boundary quadrature is
needed for that comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from mpmath import mp, mpf, mpc, workprec

from ._rational import GaussianRational, as_gaussian
from .dyncore import (
    _as_d,
    detect_preperiodic_exact,
    orbit_numeric,
    OrbitStatus,
)
from .greens import green_param, _to_mpc
from .errors import PreconditionError
from .persolve import RootSet, difference_poly, solve_roots, rational_candidate


@dataclass(frozen=True)
class EmpiricalMeasure:
    """Discrete probability measure: complex points with positive weights."""

    points: tuple  # ((complex, weight), ...)

    def __post_init__(self):
        total = sum(w for _, w in self.points)
        if self.points and abs(total - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {total}, expected 1")
        if any(w <= 0 for _, w in self.points):
            raise ValueError("weights must be positive")

    @staticmethod
    def from_rootset(rs: RootSet) -> "EmpiricalMeasure":
        total = rs.total_multiplicity
        pts = tuple(
            (complex(r.value), r.multiplicity / total) for r in rs.roots
        )
        return EmpiricalMeasure(points=pts)


@dataclass(frozen=True)
class GapReport:
    ell: int
    m: int
    radius: float
    samples: int
    gap: float
    gap_log10: float
    precision_bits: int

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "m": self.m,
            "radius": self.radius,
            "samples": self.samples,
            "gap": self.gap,
            "gap_log10": self.gap_log10,
            "precision_bits": self.precision_bits,
        }


def potential_gap(
    a,
    d,
    ell: int,
    m: int,
    circle_radius: float = 4.0,
    samples: int = 256,
    escape_cap: int = 512,
) -> GapReport:
    """sup over the circle |z| = R of |d^{-(l-1)} log|G_l(z) - G_m(z)| - G_a(z)|.

    The normalized log of the monic difference polynomial is the exterior
    potential of its root measure; the comparison target G_a is computed by
    the escape-rate limit at the same working precision.  Because the gap
    shrinks double-exponentially in l, the precision is sized so the gap is
    resolved, not lost in rounding; gap_log10 stays informative even when
    the gap underflows a double.

    Precondition: R lies outside M_a, checked sample-by-sample via the
    certified escape test.
    """
    d = _as_d(d)
    if not (ell > m >= 1):
        raise PreconditionError("need l > m >= 1")
    # log2 |G_l(z)| grows like d^(l-1) G(z) / ln 2; resolving the
    # G_m-vs-G_l cancellation needs that many bits, plus margin.
    g_bound = math.log(circle_radius + abs(complex(a)) ** d + 2.0) / math.log(2.0)
    prec = int(d ** (ell - 1) * g_bound) + 256
    worst = mpf(0)
    with workprec(prec):
        az = _to_mpc(a)
        a_pow = az**d
        tiny = mpf(2) ** (-(prec + 16))
        for j in range(samples):
            zj = circle_radius * mp.expjpi(mpf(2 * j) / samples)
            rstar = max(3.0, (2.0 * abs(zj)) ** (1.0 / d))
            w = a_pow + zj
            iterates = [w]
            escaped_at = None
            n = 0
            while True:
                if escaped_at is None and abs(w) > rstar:
                    escaped_at = n
                if escaped_at is not None and n >= ell:
                    tail = mp.log(1 + abs(zj) / abs(w) ** d) / d**n * d / (d - 1)
                    if tail < tiny:
                        break
                if n - (escaped_at or 0) > escape_cap:
                    break
                w = w**d + zj
                n += 1
                if n <= ell:
                    iterates.append(w)
                if escaped_at is None and n > escape_cap:
                    raise PreconditionError(
                        f"sample {j} on |z|={circle_radius} failed the escape "
                        "check; the circle must lie outside the parameter set"
                    )
            green = mp.log(abs(w)) / d**n
            diff = iterates[ell - 1] - iterates[m - 1]
            if diff == 0:
                raise PreconditionError(f"sample {j} is a root of G_l - G_m")
            pot = mp.log(abs(diff)) / d ** (ell - 1)
            gap = abs(pot - green)
            if gap > worst:
                worst = gap
    return GapReport(
        ell=ell,
        m=m,
        radius=circle_radius,
        samples=samples,
        gap=float(worst),
        gap_log10=float(mp.log10(worst)) if worst > 0 else float("-inf"),
        precision_bits=prec,
    )


@dataclass(frozen=True)
class BoxGrid:
    """Axis-aligned box partition of a rectangle, for weak-* comparison."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int

    def index_of(self, z: complex) -> Optional[int]:
        if not (self.x_min <= z.real < self.x_max and self.y_min <= z.imag < self.y_max):
            return None
        i = int((z.real - self.x_min) / (self.x_max - self.x_min) * self.nx)
        j = int((z.imag - self.y_min) / (self.y_max - self.y_min) * self.ny)
        i = min(i, self.nx - 1)
        j = min(j, self.ny - 1)
        return j * self.nx + i

    @staticmethod
    def default_for(a, d, nx: int = 64, ny: int = 64) -> "BoxGrid":
        s = max(1.0, abs(complex(a)) ** int(d))
        return BoxGrid(-2.5 * s, 1.5 * s, -2.0 * s, 2.0 * s, nx, ny)


def box_discrepancy(mu1: EmpiricalMeasure, mu2: EmpiricalMeasure, grid: BoxGrid) -> float:
    """max over grid boxes of |mu1(box) - mu2(box)|, in [0, 1].

    Mass outside the grid counts as one extra box.
    """
    n_cells = grid.nx * grid.ny + 1
    w1 = [0.0] * n_cells
    w2 = [0.0] * n_cells
    for pts, acc in ((mu1.points, w1), (mu2.points, w2)):
        for z, w in pts:
            idx = grid.index_of(z)
            acc[idx if idx is not None else n_cells - 1] += w
    return max(abs(x - y) for x, y in zip(w1, w2))


@dataclass(frozen=True)
class DiscriminationResult:
    distinguished: bool
    witness: Optional[object] = None  # exact parameter (GaussianRational)
    gap: Optional[float] = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"distinguished": self.distinguished, "detail": self.detail}
        if self.witness is not None:
            out["witness"] = str(self.witness)
        if self.gap is not None:
            out["gap"] = self.gap
        return out


def _exact_witness(a, b, d, c: GaussianRational, cap: int) -> Optional[DiscriminationResult]:
    """Try c as a witness: one marked point exactly preperiodic, the other
    with a certified escape."""
    ra = detect_preperiodic_exact(a, c, d, cap=cap)
    rb = detect_preperiodic_exact(b, c, d, cap=cap)
    if ra.status is OrbitStatus.PREPERIODIC and rb.status is OrbitStatus.ESCAPED:
        g = green_param(b, c, d)
        return DiscriminationResult(
            True, witness=c, gap=g.value,
            detail=f"{a} preperiodic at c={c}; {b} escapes (step {rb.step})",
        )
    if rb.status is OrbitStatus.PREPERIODIC and ra.status is OrbitStatus.ESCAPED:
        g = green_param(a, c, d)
        return DiscriminationResult(
            True, witness=c, gap=g.value,
            detail=f"{b} preperiodic at c={c}; {a} escapes (step {ra.step})",
        )
    return None


def discriminate(a, b, d, ell_max: int = 6, budget: int = 2048) -> DiscriminationResult:
    """Search for a parameter where exactly one of a, b is preperiodic.

    Candidates: small Gaussian integers, then rational-looking roots of
    a-side and b-side difference polynomials up to ell_max.  Budget
    exhaustion yields "indistinguishable at this budget" -- never a claim
    of equality.
    """
    d = _as_d(d)
    from fractions import Fraction

    a_ex = as_gaussian(a) if isinstance(a, (int, Fraction, GaussianRational)) else None
    b_ex = as_gaussian(b) if isinstance(b, (int, Fraction, GaussianRational)) else None
    if a_ex is None or b_ex is None:
        raise PreconditionError("discriminate needs exact (Gaussian-)rational a, b")
    if a_ex**d == b_ex**d:
        return DiscriminationResult(
            False, detail="a^d = b^d: the parameter sets coincide exactly"
        )
    for x in range(-2, 3):
        for y in range(-2, 3):
            c = GaussianRational(Fraction(x), Fraction(y))
            hit = _exact_witness(a_ex, b_ex, d, c, budget)
            if hit:
                return hit
    for side in (a_ex, b_ex):
        if not side.is_rational:
            continue
        for ell in range(2, ell_max + 1):
            for m in range(1, ell):
                rs = solve_roots(difference_poly(side.re, d, ell, m))
                for root in rs.roots:
                    q = rational_candidate(root)
                    if q is None:
                        continue
                    hit = _exact_witness(
                        a_ex, b_ex, d, GaussianRational(q, Fraction(0)), budget
                    )
                    if hit:
                        return hit
    return DiscriminationResult(
        False,
        detail=f"no witness found with difference polynomials up to l={ell_max}",
    )
