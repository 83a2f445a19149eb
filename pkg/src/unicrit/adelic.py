"""Product-formula machinery over Q: exact p-adic local Green's functions,
adelic heights of parameters, canonical heights of points, and Galois-orbit
heights.

Local values at a prime p are exact rationals q, meaning q * log p.  The
escape certificate is the ultrametric lock-in: once v_p(z) < 0 and
d v_p(z) < v_p(c), every later iterate has valuation d times the previous
one, so the normalized limit stabilizes exactly.  Boundedness at p is
certified only by the ultrametric integrality rule or by exact global
preperiodicity; the cancellation regime ends in Unresolved, never in a
silent zero.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import sympy

from ._rational import GaussianRational
from .dyncore import _as_d, detect_preperiodic_exact, OrbitStatus
from .greens import GreenValue, green_param, _escape_rate, _to_mpc, _PREC_LADDER, _Ambiguous
from .errors import PreconditionError, PrecisionError, UnresolvedError
from . import _polyint as P

from mpmath import workprec

DEFAULT_PADIC_CAP = 512
DEFAULT_PADIC_DIGITS = 256
MAX_PADIC_DIGITS = 4096


class PlaceStatus(enum.Enum):
    EXACT_ZERO = "exact-zero"
    EXACT_POSITIVE = "exact-positive"
    NUMERIC_CERTIFIED = "numeric-certified"
    UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class Place:
    """A place of Q: the archimedean place or a prime p (all weights are 1)."""

    p: Optional[int]  # None for the archimedean place

    @property
    def is_archimedean(self) -> bool:
        return self.p is None

    def __str__(self) -> str:
        return "inf" if self.p is None else str(self.p)


@dataclass(frozen=True)
class PlaceReport:
    place: Place
    status: PlaceStatus
    q: Optional[Fraction] = None      # non-archimedean: value is q * log p
    green: Optional[GreenValue] = None  # archimedean value with error

    @property
    def value(self) -> float:
        if self.place.is_archimedean:
            return self.green.value if self.green else 0.0
        if self.q is None:
            return 0.0
        return float(self.q) * math.log(self.place.p)

    @property
    def error(self) -> float:
        if self.place.is_archimedean and self.green:
            return self.green.error
        return 0.0

    def to_json(self) -> dict:
        out = {"p": "inf" if self.place.is_archimedean else self.place.p,
               "status": self.status.value}
        if self.q is not None:
            out["q"] = str(self.q)
        if self.green is not None:
            out["green"] = self.green.to_json()
        return out


@dataclass(frozen=True)
class HeightReport:
    value: float
    error: float
    places: tuple
    partial: bool = False

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "error": self.error,
            "partial": self.partial,
            "places": [r.to_json() for r in self.places],
        }


# ---------------------------------------------------------------------------
# p-adic scalars with certified valuations
# ---------------------------------------------------------------------------


class _PrecisionLoss(Exception):
    pass


def vp_int(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_fraction(x: Fraction, p: int):
    """p-adic valuation of a rational; +inf for 0."""
    if x == 0:
        return math.inf
    return vp_int(x.numerator, p) - vp_int(x.denominator, p)


@dataclass(frozen=True)
class _Padic:
    """z = p^val * unit known modulo p^(val + prec); unit is a p-unit.

    val is the exact valuation.  is_zero marks an exact zero (only produced
    by conversion of the rational 0).
    """

    p: int
    val: int
    unit: int
    prec: int
    is_zero: bool = False

    @staticmethod
    def zero(p: int, prec: int) -> "_Padic":
        return _Padic(p=p, val=0, unit=0, prec=prec, is_zero=True)

    @staticmethod
    def from_fraction(x: Fraction, p: int, prec: int) -> "_Padic":
        if x == 0:
            return _Padic.zero(p, prec)
        vn = vp_int(x.numerator, p)
        vd = vp_int(x.denominator, p)
        num = x.numerator // p**vn
        den = x.denominator // p**vd
        mod = p**prec
        unit = num * pow(den, -1, mod) % mod
        return _Padic(p=p, val=vn - vd, unit=unit, prec=prec)

    def pow(self, d: int) -> "_Padic":
        if self.is_zero:
            return self
        mod = self.p**self.prec
        return _Padic(
            p=self.p, val=self.val * d, unit=pow(self.unit, d, mod), prec=self.prec
        )

    def add(self, other: "_Padic") -> "_Padic":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        p = self.p
        v = min(self.val, other.val)
        # digits of each term available at scale p^v
        prec_a = self.prec + (self.val - v)
        prec_b = other.prec + (other.val - v)
        prec = min(prec_a, prec_b)
        mod = p**prec
        w = (self.unit * p ** (self.val - v) + other.unit * p ** (other.val - v)) % mod
        if w == 0:
            raise _PrecisionLoss
        t = vp_int(w, p)
        if t >= prec:
            raise _PrecisionLoss
        return _Padic(p=p, val=v + t, unit=(w // p**t) % p ** (prec - t), prec=prec - t)


def _padic_escape_rate(
    w0: Fraction, c: Fraction, p: int, d: int, cap: int, digits: int
):
    """lim d^{-i} max(0, -v_p(w_i)) from w_0, as an exact Fraction.

    Returns (q, status).  The lock-in rule certifies the limit exactly;
    Unresolved means the cancellation regime outlived the cap or the digit
    budget.
    """
    v_c = vp_fraction(c, p)
    while digits <= MAX_PADIC_DIGITS:
        try:
            z = _Padic.from_fraction(w0, p, digits)
            cz = _Padic.from_fraction(c, p, digits)
            for i in range(cap + 1):
                if not z.is_zero and z.val < 0 and d * z.val < v_c:
                    return Fraction(-z.val, d**i), PlaceStatus.EXACT_POSITIVE
                if (z.is_zero or z.val >= 0) and v_c >= 0:
                    return Fraction(0), PlaceStatus.EXACT_ZERO
                z = z.pow(d).add(cz)
            return None, PlaceStatus.UNRESOLVED
        except _PrecisionLoss:
            digits *= 2
    return None, PlaceStatus.UNRESOLVED


def local_green_nonarch(
    a,
    c,
    p: int,
    d,
    cap: int = DEFAULT_PADIC_CAP,
    digits: int = DEFAULT_PADIC_DIGITS,
    skip_preperiodic_check: bool = False,
) -> PlaceReport:
    """Exact local Green's value of the parameter c at the prime p.

    The returned q means q * log p.  q = 0 is certified either by the
    ultrametric integrality rule (v_p(a) >= 0 and v_p(c) >= 0) or by exact
    global preperiodicity; escape is certified by valuation lock-in.
    """
    d = _as_d(d)
    if not sympy.isprime(p):
        raise PreconditionError(f"{p} is not prime")
    a = Fraction(a)
    c = Fraction(c)
    place = Place(p=p)
    if vp_fraction(a, p) >= 0 and vp_fraction(c, p) >= 0:
        return PlaceReport(place=place, status=PlaceStatus.EXACT_ZERO, q=Fraction(0))
    if not skip_preperiodic_check:
        res = detect_preperiodic_exact(a, c, d, cap=128)
        if res.status is OrbitStatus.PREPERIODIC:
            return PlaceReport(place=place, status=PlaceStatus.EXACT_ZERO, q=Fraction(0))
    q, status = _padic_escape_rate(a**d + c, c, p, d, cap, digits)
    return PlaceReport(place=place, status=status, q=q)


def _denominator_primes(*xs: Fraction) -> list[int]:
    den = 1
    for x in xs:
        den *= x.denominator
    if den == 1:
        return []
    return sorted(sympy.factorint(den).keys())


def _arch_report(a, c, d, arch_error: float, preperiodic: bool) -> PlaceReport:
    if preperiodic:
        return PlaceReport(
            place=Place(p=None),
            status=PlaceStatus.EXACT_ZERO,
            green=GreenValue(0.0, 0.0, 0),
        )
    g = green_param(a, c, d, target_error=arch_error)
    status = PlaceStatus.NUMERIC_CERTIFIED
    return PlaceReport(place=Place(p=None), status=status, green=g)


def adelic_height(a, c, d, arch_error: float = 1e-12, cap: int = DEFAULT_PADIC_CAP) -> HeightReport:
    """Adelic height of the parameter c for the marked point a, over Q.

    Sum over places of the local Green's values: exact rational multiples of
    log p at the finitely many primes dividing a denominator (all other
    primes are certified zero by the ultrametric rule), plus the archimedean
    value.  The total error is the archimedean error alone.
    """
    d = _as_d(d)
    a = Fraction(a)
    c = Fraction(c)
    pre = detect_preperiodic_exact(a, c, d).status is OrbitStatus.PREPERIODIC
    reports = []
    for p in _denominator_primes(a, c):
        if pre:
            reports.append(
                PlaceReport(place=Place(p=p), status=PlaceStatus.EXACT_ZERO, q=Fraction(0))
            )
        else:
            reports.append(
                local_green_nonarch(a, c, p, d, cap=cap, skip_preperiodic_check=True)
            )
    reports.append(_arch_report(a, c, d, arch_error, pre))
    partial = any(r.status is PlaceStatus.UNRESOLVED for r in reports)
    value = sum(r.value for r in reports if r.status is not PlaceStatus.UNRESOLVED)
    error = sum(r.error for r in reports)
    return HeightReport(value=value, error=error, places=tuple(reports), partial=partial)


def canonical_height_point(
    c, a, d, arch_error: float = 1e-12, cap: int = DEFAULT_PADIC_CAP
) -> HeightReport:
    """Canonical height of the point a under f_c = z^d + c, over Q.

    Same local escape rates as adelic_height but normalized from the orbit
    of a itself (one index lower), so d * this = adelic_height(a, c, d)
    exactly place by place.
    """
    d = _as_d(d)
    a = Fraction(a)
    c = Fraction(c)
    pre = detect_preperiodic_exact(a, c, d).status is OrbitStatus.PREPERIODIC
    reports = []
    for p in _denominator_primes(a, c):
        if pre:
            reports.append(
                PlaceReport(place=Place(p=p), status=PlaceStatus.EXACT_ZERO, q=Fraction(0))
            )
            continue
        q, status = _padic_escape_rate(a, c, p, d, cap, DEFAULT_PADIC_DIGITS)
        reports.append(PlaceReport(place=Place(p=p), status=status, q=q))
    if pre:
        reports.append(_arch_report(a, c, d, arch_error, True))
    else:
        ok = False
        for prec in _PREC_LADDER:
            with workprec(prec):
                try:
                    value, error, iters = _escape_rate(
                        _to_mpc(a), _to_mpc(c), d, arch_error, 4096
                    )
                    ok = True
                    break
                except _Ambiguous:
                    continue
        if not ok:
            raise PrecisionError("archimedean escape rate did not certify")
        reports.append(
            PlaceReport(
                place=Place(p=None),
                status=PlaceStatus.NUMERIC_CERTIFIED,
                green=GreenValue(value, error, iters),
            )
        )
    partial = any(r.status is PlaceStatus.UNRESOLVED for r in reports)
    value = sum(r.value for r in reports if r.status is not PlaceStatus.UNRESOLVED)
    error = sum(r.error for r in reports)
    return HeightReport(value=value, error=error, places=tuple(reports), partial=partial)


# ---------------------------------------------------------------------------
# Galois-orbit heights
# ---------------------------------------------------------------------------


def _resultant_qq(f: list, g: list) -> Fraction:
    """Resultant of two polynomials with rational coefficients (via sympy)."""
    x = sympy.Symbol("x")
    fp = sympy.Poly([sympy.Rational(c.numerator, c.denominator)
                     if isinstance(c, Fraction) else sympy.Integer(c)
                     for c in reversed(f)], x)
    gp = sympy.Poly([sympy.Rational(c.numerator, c.denominator)
                     if isinstance(c, Fraction) else sympy.Integer(c)
                     for c in reversed(g)], x)
    r = sympy.resultant(fp, gp)
    return Fraction(sympy.Rational(r))


def _poly_mod(f: list, mod: list) -> list:
    """Remainder of f modulo a monic polynomial, exact over Q."""
    rem = [Fraction(c) for c in f]
    dm = len(mod) - 1
    while len(rem) - 1 >= dm and any(rem):
        k = len(rem) - 1 - dm
        q = rem[-1]
        if q:
            for i in range(dm):
                rem[k + i] -= q * Fraction(mod[i])
        rem.pop()
        while rem and rem[-1] == 0:
            rem.pop()
    return rem


def _orbit_resultant_green(
    a: Fraction, pcoeffs: list, p: int, d: int, nmax: int
):
    """Average local Green's value over the roots of P at the prime p, via
    the p-part of Res(P, G_n mod P).

    The d-ratio certificate accepts only when two successive normalized
    values agree exactly; mixed bounded/escaping orbits fail it and come
    back Unresolved.
    """
    degp = len(pcoeffs) - 1
    r = [a**d, Fraction(1)]  # G_1 = a^d + c, already reduced if degp >= 2
    if degp == 1:
        r = _poly_mod(r, pcoeffs)
    e_values = []
    for n in range(1, nmax + 1):
        if not r:
            return None, PlaceStatus.UNRESOLVED  # G_n vanishes mod P
        res = _resultant_qq(pcoeffs, r)
        if res == 0:
            return None, PlaceStatus.UNRESOLVED
        e_values.append(vp_fraction(res, p))
        if len(e_values) >= 3:
            e0, e1, e2 = e_values[-3], e_values[-2], e_values[-1]
            if e1 == d * e0 and e2 == d * e1:
                n0 = n - 2  # index of e0
                q = Fraction(max(0, -e0), d ** (n0 - 1) * degp)
                return q, (
                    PlaceStatus.EXACT_ZERO if q == 0 else PlaceStatus.EXACT_POSITIVE
                )
        # next iterate mod P
        nxt = P.power(r, d)
        nxt = P.add(nxt, [0, 1])
        r = _poly_mod(nxt, pcoeffs)
    return None, PlaceStatus.UNRESOLVED


def galois_orbit_height(
    a,
    pcoeffs,
    d,
    arch_error: float = 1e-10,
    nmax: int = 20,
) -> HeightReport:
    """Height of the Galois-stable root set of a monic squarefree integer
    polynomial P, relative to the adelic set attached to the marked point a.

    Archimedean part: the average of the Green's values over the complex
    roots of P (exactly 0 for roots confirmed preperiodic by exact
    iteration).  Non-archimedean parts: resultant-based stabilization at
    the primes dividing den(a); the roots of a monic integer polynomial are
    algebraic integers, so all other primes are certified zero.
    """
    from .persolve import solve_roots, rational_candidate, gaussian_candidate

    d = _as_d(d)
    a = Fraction(a)
    coeffs = [int(c) for c in pcoeffs]
    coeffs = P.normalize(coeffs)
    if not coeffs or coeffs[-1] != 1:
        raise PreconditionError("P must be monic with integer coefficients")
    if P.degree(P.gcd_modular(coeffs, P.differentiate(coeffs))) != 0:
        raise PreconditionError("P must be squarefree")
    degp = len(coeffs) - 1

    rs = solve_roots(coeffs)
    arch_sum = 0.0
    arch_err = 0.0
    exact_count = 0
    for root in rs.roots:
        cand = gaussian_candidate(root)
        if cand is not None:
            res = detect_preperiodic_exact(a, cand, d)
            if res.status is OrbitStatus.PREPERIODIC:
                exact_count += 1
                continue
            g = green_param(a, cand, d, target_error=arch_error)
        else:
            g = green_param(a, complex(root.value), d, target_error=arch_error)
        arch_sum += g.value
        arch_err += g.error + root.radius
    arch = GreenValue(arch_sum / degp, arch_err / degp, 0)
    status = (
        PlaceStatus.EXACT_ZERO
        if exact_count == degp
        else PlaceStatus.NUMERIC_CERTIFIED
    )
    reports = [PlaceReport(place=Place(p=None), status=status, green=arch)]
    for p in _denominator_primes(a):
        q, st = _orbit_resultant_green(a, coeffs, p, d, nmax)
        reports.append(PlaceReport(place=Place(p=p), status=st, q=q))
    partial = any(r.status is PlaceStatus.UNRESOLVED for r in reports)
    value = sum(r.value for r in reports if r.status is not PlaceStatus.UNRESOLVED)
    error = sum(r.error for r in reports)
    return HeightReport(value=value, error=error, places=tuple(reports), partial=partial)


def product_formula_holds(x) -> bool:
    """Exact check of the product formula for a nonzero rational:
    |x|_inf * prod_p |x|_p = 1, i.e. |x| = prod_p p^{v_p(x)}."""
    x = Fraction(x)
    if x == 0:
        raise PreconditionError("product formula applies to nonzero rationals")
    rebuilt = Fraction(1)
    for p, e in sympy.factorint(abs(x.numerator)).items():
        rebuilt *= Fraction(p) ** e
    for p, e in sympy.factorint(x.denominator).items():
        rebuilt /= Fraction(p) ** e
    return rebuilt == abs(x)
