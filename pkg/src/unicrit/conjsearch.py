"""Exact search for parameters where two points are simultaneously
preperiodic, via modular gcds of difference polynomials.

For fixed a, b with a^d != b^d the set of such parameters is expected to be
tiny, so the interesting output is the full list of irreducible common
factors (with provenance) and the verified rational roots, for the budget
actually covered.  No completeness is claimed beyond the budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import sympy

from . import _polyint as P
from .dyncore import _as_d, detect_preperiodic_exact, iterate_poly, OrbitStatus
from .errors import DegreeCapError, PreconditionError
from .persolve import difference_poly

DEFAULT_DEGREE_CAP = 1 << 14


def difference_gcd(pa, pb) -> list:
    """Exact monic gcd over Q[c] of two difference polynomials.

    Computed by the modular method (gcd modulo word-size primes, CRT-lifted,
    verified by exact trial division); both inputs being monic, the gcd has
    integer coefficients and is returned monic.
    """
    fa = list(pa.coeffs) if hasattr(pa, "coeffs") else list(pa)
    fb = list(pb.coeffs) if hasattr(pb, "coeffs") else list(pb)
    fa, _ = P.to_integer(fa)
    fb, _ = P.to_integer(fb)
    if not fa or not fb:
        raise PreconditionError("gcd of a zero polynomial")
    g = P.gcd_modular(fa, fb)
    if g[-1] < 0:
        g = [-c for c in g]
    return g


@dataclass(frozen=True)
class FactorProvenance:
    """An irreducible common factor with one witnessing difference pair per
    side (minimal in lexicographic (l, m) order)."""

    coeffs: tuple
    a_pair: tuple  # (l, m) with factor | G_l - G_m for the a side
    b_pair: tuple

    def to_json(self) -> dict:
        return {
            "coefficients": [int(c) for c in self.coeffs],
            "a_pair": list(self.a_pair),
            "b_pair": list(self.b_pair),
        }


@dataclass(frozen=True)
class CommonRootReport:
    a: Fraction
    b: Fraction
    d: int
    lmax: int
    factors: tuple
    rational_roots: tuple
    pairs_covered: tuple  # all (l, m) pairs whose root sets are covered
    partial: bool = False

    def to_json(self) -> dict:
        return {
            "a": str(self.a),
            "b": str(self.b),
            "d": self.d,
            "lmax": self.lmax,
            "partial": self.partial,
            "factors": [f.to_json() for f in self.factors],
            "rational_roots": [str(r) for r in self.rational_roots],
            "pairs_covered": [list(p) for p in self.pairs_covered],
        }


def _irreducible_factors(coeffs: list) -> list[list]:
    """Monic irreducible factors over Q of an integer polynomial (via the
    standard factorization of the small gcd output)."""
    x = sympy.Symbol("x")
    poly = sympy.Poly([int(c) for c in reversed(coeffs)], x)
    _, factors = sympy.factor_list(poly)
    out = []
    for fac, _mult in factors:
        fc = [int(c) for c in reversed(sympy.Poly(fac, x).all_coeffs())]
        if fc[-1] < 0:
            fc = [-c for c in fc]
        out.append(fc)
    out.sort(key=lambda f: (len(f), f))
    return out


def _minimal_pair(factor: list, a, d: int, lmax: int) -> Optional[tuple]:
    """Smallest (l, m) with factor dividing G_l - G_m, or None."""
    for ell in range(2, lmax + 1):
        for m in range(1, ell):
            dp = difference_poly(a, d, ell, m)
            coeffs, _ = P.to_integer(list(dp.coeffs))
            if P.divides(factor, coeffs):
                return (ell, m)
    return None


def common_preperiodic_params(
    a,
    b,
    d,
    lmax: int,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> CommonRootReport:
    """All parameters c (as common irreducible factors) where a and b are
    simultaneously preperiodic within the (l, m <= lmax) budget.

    Divisibility nesting G_{l+1} - G_{m+1} = (G_l - G_m) * H reduces the
    whole budget to the top-level differences G_lmax - G_m, so the search is
    a grid of pairwise modular gcds instead of a product of radicals.  Every
    rational root is cross-checked by exact iteration on both sides.
    """
    d = _as_d(d)
    a = Fraction(a)
    b = Fraction(b)
    if a**d == b**d:
        raise PreconditionError(
            "a^d = b^d: the two marked points have identical parameter sets, "
            "so the common preperiodic locus is infinite"
        )
    if lmax < 2:
        raise PreconditionError("lmax must be >= 2")
    top = lmax
    partial = False
    while d ** (top - 1) > degree_cap:
        top -= 1
        partial = True
    if top < 2:
        raise DegreeCapError(
            f"degree cap {degree_cap} does not even allow l = 2 (degree {d})"
        )

    a_diffs = {}
    b_diffs = {}
    for m in range(1, top):
        pa, _ = P.to_integer(list(difference_poly(a, d, top, m).coeffs))
        pb, _ = P.to_integer(list(difference_poly(b, d, top, m).coeffs))
        a_diffs[m] = pa
        b_diffs[m] = pb

    combined = [1]
    for ma in range(1, top):
        for mb in range(1, top):
            g = P.gcd_modular(a_diffs[ma], b_diffs[mb])
            if P.degree(g) < 1:
                continue
            g = P.squarefree_part(g)
            new_part = P.div_exact(g, P.gcd_modular(combined, g))
            if P.degree(new_part) >= 1:
                combined = P.mul(combined, new_part)

    factors = []
    rational_roots = []
    for fac in _irreducible_factors(combined):
        pair_a = _minimal_pair(fac, a, d, top)
        pair_b = _minimal_pair(fac, b, d, top)
        if pair_a is None or pair_b is None:
            raise RuntimeError(
                "internal: common factor without a witnessing difference pair"
            )
        factors.append(
            FactorProvenance(coeffs=tuple(fac), a_pair=pair_a, b_pair=pair_b)
        )
        if len(fac) == 2:  # monic linear factor c + r0
            root = Fraction(-fac[0], fac[1])
            ra = detect_preperiodic_exact(a, root, d)
            rb = detect_preperiodic_exact(b, root, d)
            if not (
                ra.status is OrbitStatus.PREPERIODIC
                and rb.status is OrbitStatus.PREPERIODIC
            ):
                raise RuntimeError(
                    f"internal: root {root} failed the exact preperiodicity "
                    "cross-check"
                )
            rational_roots.append(root)

    pairs = tuple(
        (ell, m) for ell in range(2, top + 1) for m in range(1, ell)
    )
    return CommonRootReport(
        a=a,
        b=b,
        d=d,
        lmax=lmax,
        factors=tuple(factors),
        rational_roots=tuple(sorted(rational_roots)),
        pairs_covered=pairs,
        partial=partial,
    )


@dataclass(frozen=True)
class VerificationResult:
    root_results: tuple  # ((root, bool), ...)
    factor_results: tuple  # ((factor coeffs, bool), ...)

    @property
    def all_passed(self) -> bool:
        return all(ok for _, ok in self.root_results) and all(
            ok for _, ok in self.factor_results
        )


def verify_common(report: CommonRootReport) -> VerificationResult:
    """Re-verify a report: exact iteration for every rational root on both
    sides, and exact divisibility of every factor into freshly built
    difference polynomials.  Report-only."""
    roots = []
    for r in report.rational_roots:
        ra = detect_preperiodic_exact(report.a, r, report.d)
        rb = detect_preperiodic_exact(report.b, r, report.d)
        roots.append(
            (r, ra.status is OrbitStatus.PREPERIODIC and rb.status is OrbitStatus.PREPERIODIC)
        )
    facs = []
    for f in report.factors:
        ok = True
        for point, (ell, m) in ((report.a, f.a_pair), (report.b, f.b_pair)):
            dp = difference_poly(point, report.d, ell, m)
            coeffs, _ = P.to_integer(list(dp.coeffs))
            ok = ok and P.divides(list(f.coeffs), coeffs)
        facs.append((f.coeffs, ok))
    return VerificationResult(root_results=tuple(roots), factor_results=tuple(facs))
