"""Roots of difference polynomials G_l - G_m: the preperiodic parameters.

The solver runs Aberth-Ehrlich simultaneous iteration on each squarefree
component of the exact Yun decomposition (multiplicities are recovered from
the exact gcd chain, never from numerical clustering), with certified
inclusion radii from the classical disk bound n |p(z)/p'(z)| evaluated with
a running rounding-error estimate.  The working precision ladder doubles
until all inclusion disks are pairwise disjoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from mpmath import mp, mpf, mpc, workprec

from . import _polyint as P
from ._rational import GaussianRational
from .dyncore import _as_d, iterate_poly, DEFAULT_DEGREE_CAP
from .errors import BudgetError, PrecisionError, PreconditionError

MAX_PRECISION = 4096
_GOLDEN = 0.3819660112501051


@dataclass(frozen=True)
class DifferencePoly:
    """Exact difference polynomial G_l(c) - G_m(c), lowest degree first."""

    a: Fraction
    d: int
    ell: int
    m: int
    coeffs: tuple

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return P.eval_at(list(self.coeffs), x)


@dataclass(frozen=True)
class Root:
    """One root with exact multiplicity and a certified inclusion radius.

    value is an mpmath mpc at the precision recorded in the owning RootSet;
    the closed disk of the given radius around it contains exactly
    `multiplicity` roots (with multiplicity) of the input polynomial.
    """

    value: object
    multiplicity: int
    radius: float

    def to_complex(self) -> complex:
        return complex(self.value)


@dataclass(frozen=True)
class RootSet:
    ell: Optional[int]
    m: Optional[int]
    degree: int
    roots: tuple
    precision_bits: int

    @property
    def total_multiplicity(self) -> int:
        return sum(r.multiplicity for r in self.roots)


def difference_poly(
    a, d, ell: int, m: int, degree_cap: int = DEFAULT_DEGREE_CAP
) -> DifferencePoly:
    """Exact G_l - G_m for l > m >= 1; monic of degree d^(l-1)."""
    d = _as_d(d)
    if not (ell > m >= 1):
        raise PreconditionError("need l > m >= 1")
    g_l = iterate_poly(a, d, ell, degree_cap)
    g_m = iterate_poly(a, d, m, degree_cap)
    coeffs = P.sub(list(g_l.coeffs), list(g_m.coeffs))
    return DifferencePoly(a=Fraction(a), d=d, ell=ell, m=m, coeffs=tuple(coeffs))


# ---------------------------------------------------------------------------
# Aberth-Ehrlich iteration
# ---------------------------------------------------------------------------


def _hull_radii(coeffs: list) -> list[tuple[float, int]]:
    """Newton-polygon radius estimates: [(radius, count)] summing to deg.

    Radii come from the slopes of the upper convex hull of (k, log|a_k|);
    they track the actual root moduli closely, unlike the Fujiwara bound.
    """
    pts = []
    for k, c in enumerate(coeffs):
        if c != 0:
            pts.append((k, math.log(abs(Fraction(c)))))
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # pop while the middle point lies on or below the chord
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) >= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    return [
        (math.exp((h1 - h2) / (k2 - k1)), k2 - k1)
        for (k1, h1), (k2, h2) in zip(hull, hull[1:])
    ]


def _initial_points(coeffs: list, n: int) -> list:
    """Deterministic initial approximations from the Newton polygon.

    Points go on circles at the hull radii with a fixed phase offset to
    break symmetry.  (A single Cauchy-bound circle is hopeless here:
    iterate differences have coefficient ratios around 1e150, and Aberth
    needs O(n log R) sweeps to come in from radius R.)
    """
    out = []
    for e, (r, cnt) in enumerate(_hull_radii(coeffs)):
        for j in range(cnt):
            theta = 2 * math.pi * ((j + 0.5) / cnt + _GOLDEN * e) + 0.7
            out.append(mpc(r * math.cos(theta), r * math.sin(theta)))
    return out


def _probe_radius(coeffs: list) -> float:
    """Radius of the annulus holding the bulk of the roots (0.75 quantile
    of the hull radii, by count).  Used only to skip hopeless precision
    rungs cheaply; a wrong guess merely costs wasted sweeps."""
    radii = _hull_radii(coeffs)
    total = sum(cnt for _, cnt in radii)
    acc = 0
    for r, cnt in sorted(radii):
        acc += cnt
        if acc >= 0.75 * total:
            return 2.0 * r
    return 2.0 * max(r for r, _ in radii)


def _horner_pair(coeffs_mp: list, z: mpc):
    """Evaluate p and p' at z by a fused Horner pass."""
    pv = mpc(0)
    dv = mpc(0)
    for c in reversed(coeffs_mp):
        dv = dv * z + pv
        pv = pv * z + c
    return pv, dv


def _abs_poly_bounds(coeffs_abs: list, az: mpf):
    """(sum |a_k| |z|^k, sum k |a_k| |z|^(k-1)) at 53-bit precision."""
    with workprec(53):
        s = mpf(0)
        ds = mpf(0)
        for c in reversed(coeffs_abs):
            ds = ds * az + s
            s = s * az + c
    return s, ds


def _aberth_component(coeffs_int: list, prec: int, init, max_sweeps: int):
    """All roots of a squarefree integer polynomial at a given precision.

    Returns (roots, converged flag).  Jacobi-style sweeps: every update in a
    sweep uses the previous iterate, which makes the computation independent
    of evaluation order.
    """
    n = len(coeffs_int) - 1
    with workprec(prec):
        lead = coeffs_int[-1]
        coeffs_mp = [mpf(c) / lead for c in coeffs_int]
        z = [mpc(w) for w in init] if init else _initial_points(coeffs_int, n)
        if len(z) != n:
            raise ValueError("internal: wrong number of initial points")
        locked = [False] * n
        tol = mpf(2) ** (-(prec - 12))
        stall_tol = mpf(2) ** (-24)
        prev_corr = [None] * n
        best_max_corr = None
        stagnant = 0
        for _ in range(max_sweeps):
            live = [i for i in range(n) if not locked[i]]
            if not live:
                break
            # Sum_{j != i} 1/(z_i - z_j), needed only for live i.  Use the
            # symmetric pair trick while most roots are live.
            inv_sums = {}
            if len(live) * 2 > n:
                sums = [mpc(0)] * n
                for i in range(n):
                    zi = z[i]
                    acc = sums[i]
                    for j in range(i + 1, n):
                        diff = zi - z[j]
                        if diff == 0:
                            diff = mpc(tol, tol)
                        s = 1 / diff
                        acc += s
                        sums[j] -= s
                    sums[i] = acc
                for i in live:
                    inv_sums[i] = sums[i]
            else:
                for i in live:
                    zi = z[i]
                    acc = mpc(0)
                    for j in range(n):
                        if j == i:
                            continue
                        diff = zi - z[j]
                        if diff == 0:
                            diff = mpc(tol, tol)
                        acc += 1 / diff
                    inv_sums[i] = acc
            corrections = {}
            for i in live:
                pv, dv = _horner_pair(coeffs_mp, z[i])
                if pv == 0:
                    locked[i] = True
                    continue
                if dv == 0:
                    corrections[i] = mpc(tol, 0)
                    continue
                nr = pv / dv
                denom = 1 - nr * inv_sums[i]
                corrections[i] = nr if denom == 0 else nr / denom
            max_corr = mpf(0)
            for i, w in corrections.items():
                z[i] = z[i] - w
                aw = abs(w)
                scale = abs(z[i]) + mpf(1) / n
                if aw <= tol * scale:
                    locked[i] = True
                elif (
                    aw <= stall_tol * scale
                    and prev_corr[i] is not None
                    and 4 * aw > prev_corr[i]
                ):
                    # correction is small and no longer shrinking: the root is
                    # rattling at the evaluation noise floor for this precision
                    locked[i] = True
                else:
                    max_corr = max(max_corr, aw)
                prev_corr[i] = aw
            if corrections and max_corr > 0:
                if best_max_corr is not None and max_corr > best_max_corr / 2:
                    stagnant += 1
                    if stagnant > 60:
                        break
                else:
                    stagnant = 0
                if best_max_corr is None or max_corr < best_max_corr:
                    best_max_corr = max_corr
        return z, all(locked)


def _certified_radii(coeffs_int: list, roots: list, prec: int):
    """Inclusion radii n (|p|+err) / (|p'|-err) with running error bounds.

    Returns None if any derivative bound is swamped by rounding error.
    """
    n = len(coeffs_int) - 1
    coeffs_abs = [abs(c) for c in coeffs_int]
    u = 2.0 ** (1 - prec)
    out = []
    with workprec(prec):
        coeffs_mp = [mpf(c) for c in coeffs_int]
        for z in roots:
            pv, dv = _horner_pair(coeffs_mp, z)
            s, ds = _abs_poly_bounds(coeffs_abs, abs(z))
            errp = 4.0 * (n + 2) * u * float(s)
            errdp = 4.0 * (n + 2) * u * float(ds)
            denom = float(abs(dv)) - errdp
            if denom <= 0:
                return None
            r = n * (float(abs(pv)) + errp) / denom
            out.append(r)
    return out


def _disks_disjoint(roots_all: list, radii_all: list) -> bool:
    pts = [complex(z) for z in roots_all]
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            if abs(pts[i] - pts[j]) <= radii_all[i] + radii_all[j]:
                return False
    return True


def _noise_floor_ok(coeffs_int: list, prec: int) -> bool:
    """Whether Horner evaluation at this precision can resolve the roots at
    all: the rounding noise u * sum |a_k| R^k must be well below O(1) on the
    annulus holding the bulk of the roots."""
    rb = _probe_radius(coeffs_int)
    s, _ = _abs_poly_bounds([abs(c) for c in coeffs_int], mpf(rb))
    noise = mpf(2) ** (1 - prec) * s * 4 * (len(coeffs_int) + 1)
    return noise < mpf(2) ** (-16)


def solve_roots(
    p,
    precision_bits: int = 128,
    max_precision: int = MAX_PRECISION,
    max_sweeps: int = 400,
) -> RootSet:
    """All complex roots of a monic exact polynomial, with multiplicity.

    Multiplicities come from the exact Yun squarefree decomposition; each
    squarefree component is solved by Aberth iteration.  The precision
    ladder doubles from precision_bits until every inclusion disk is
    pairwise disjoint (so each disk provably contains exactly one distinct
    root) or max_precision is hit.
    """
    ell = m = None
    if isinstance(p, DifferencePoly):
        ell, m = p.ell, p.m
        coeffs = list(p.coeffs)
    elif hasattr(p, "coeffs"):
        coeffs = list(p.coeffs)
    else:
        coeffs = list(p)
    coeffs = P.normalize(coeffs)
    if not coeffs:
        raise PreconditionError("polynomial must be nonzero")
    if coeffs[-1] != 1:
        raise PreconditionError("polynomial must be monic")
    coeffs_int, _den = P.to_integer(coeffs)
    deg = len(coeffs_int) - 1
    if deg == 0:
        return RootSet(ell=ell, m=m, degree=0, roots=(), precision_bits=precision_bits)

    components = P.yun_squarefree(coeffs_int)
    if sum(mult * P.degree(q) for q, mult in components) != deg:
        raise RuntimeError("squarefree decomposition degree mismatch")

    # exact zero roots split off (their inclusion radius is genuinely 0)
    work = []  # (reduced component, multiplicity)
    zero_mult = 0
    for q, mult in components:
        if q[0] == 0:
            zero_mult += mult
            q = q[1:]
        if P.degree(q) > 0:
            work.append((q, mult))

    prec = max(128, precision_bits)
    warm: dict[int, list] = {}
    last_failure = "no precision rung attempted"
    while prec <= max_precision:
        viable = all(_noise_floor_ok(q, prec) for q, _ in work)
        if viable:
            all_roots = []
            all_radii = []
            all_mult = []
            converged = True
            for idx, (q, mult) in enumerate(work):
                roots_q, ok = _aberth_component(
                    q, prec, warm.get(idx), max_sweeps
                )
                warm[idx] = roots_q
                if not ok:
                    converged = False
                    last_failure = f"Aberth did not converge at {prec} bits"
                    break
                radii = _certified_radii(q, roots_q, prec)
                if radii is None:
                    converged = False
                    last_failure = f"derivative swamped by noise at {prec} bits"
                    break
                all_roots.extend(roots_q)
                all_radii.extend(radii)
                all_mult.extend([mult] * len(roots_q))
            if converged:
                pts = all_roots
                radii = all_radii
                if zero_mult:
                    pts = pts + [mpc(0)]
                    radii = radii + [0.0]
                    all_mult = all_mult + [zero_mult]
                if _disks_disjoint(pts, radii):
                    entries = [
                        Root(value=z, multiplicity=mu, radius=r)
                        for z, mu, r in zip(pts, all_mult, radii)
                    ]
                    entries.sort(key=lambda e: (float(e.value.real), float(e.value.imag)))
                    return RootSet(
                        ell=ell,
                        m=m,
                        degree=deg,
                        roots=tuple(entries),
                        precision_bits=prec,
                    )
                last_failure = f"inclusion disks overlap at {prec} bits"
        else:
            last_failure = f"evaluation noise floor too high at {prec} bits"
        prec *= 2
    raise PrecisionError(
        f"root certification failed up to {max_precision} bits: {last_failure}"
    )


# ---------------------------------------------------------------------------
# Verification helpers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResidualReport:
    root: complex
    residual: float
    threshold: float
    passed: bool
    exact: bool = False


def verify_root(
    a, d, ell: int, m: int, root, tolerance: float = 1e-10, precision: int = 128
) -> ResidualReport:
    """Report-only residual check of G_l(root) - G_m(root).

    Rational and Gaussian-rational roots are evaluated exactly (residual is
    then exact, typically 0); other roots by Horner at the given working
    precision, with the pass threshold scaled by a local derivative estimate.
    """
    dp = difference_poly(a, d, ell, m)
    coeffs = list(dp.coeffs)
    if isinstance(root, (int, Fraction)):
        res = P.eval_at(coeffs, Fraction(root))
        return ResidualReport(
            root=complex(float(root), 0.0),
            residual=float(abs(res)),
            threshold=0.0,
            passed=res == 0,
            exact=True,
        )
    if isinstance(root, GaussianRational):
        acc_re, acc_im = Fraction(0), Fraction(0)
        for c in reversed(coeffs):
            acc_re, acc_im = (
                acc_re * root.re - acc_im * root.im + c,
                acc_re * root.im + acc_im * root.re,
            )
        res2 = acc_re * acc_re + acc_im * acc_im
        return ResidualReport(
            root=root.to_complex(),
            residual=float(res2) ** 0.5,
            threshold=0.0,
            passed=res2 == 0,
            exact=True,
        )
    with workprec(precision):
        z = mpc(complex(root))
        coeffs_mp = [mpf(c) if not isinstance(c, Fraction) else mpf(c.numerator) / c.denominator for c in coeffs]
        pv, dv = _horner_pair(coeffs_mp, z)
        scale = max(1.0, float(abs(dv)))
        residual = float(abs(pv))
        return ResidualReport(
            root=complex(root),
            residual=residual,
            threshold=tolerance * scale,
            passed=residual <= tolerance * scale,
        )


def mpf_to_fraction(x) -> Fraction:
    """Exact Fraction value of an mpmath mpf."""
    sign, man, exp, _ = x._mpf_
    if man == 0:
        if exp == 0:
            return Fraction(0)
        raise ValueError("cannot convert non-finite mpf")
    v = Fraction(int(man)) * (Fraction(2) ** exp)
    return -v if sign else v


def rational_candidate(root: Root, max_den: int = 64) -> Optional[Fraction]:
    """The small-denominator rational inside the inclusion disk, if any.

    Exact comparison: the candidate q satisfies |q - value| <= radius with
    all quantities converted to exact rationals.
    """
    im = mpf_to_fraction(root.value.imag)
    r = Fraction(root.radius)
    if abs(im) > r:
        return None
    re = mpf_to_fraction(root.value.real)
    cand = re.limit_denominator(max_den)
    if (cand - re) ** 2 + im**2 <= r * r:
        return cand
    return None


def gaussian_candidate(root: Root, max_den: int = 64) -> Optional[GaussianRational]:
    """The small-denominator Gaussian rational inside the inclusion disk."""
    re = mpf_to_fraction(root.value.real)
    im = mpf_to_fraction(root.value.imag)
    r = Fraction(root.radius)
    cre = re.limit_denominator(max_den)
    cim = im.limit_denominator(max_den)
    if (cre - re) ** 2 + (cim - im) ** 2 <= r * r:
        return GaussianRational(cre, cim)
    return None
