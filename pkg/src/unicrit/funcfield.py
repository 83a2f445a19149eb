"""Exact dynamics over the rational function field Q(t).

Places are the monic irreducible polynomials pi over Q (weight deg pi) plus
the degree place at infinity (weight 1); together they satisfy the product
formula sum_v N_v ord_v(f) = 0.  Over this field, for a nonconstant
parameter c, preperiodicity of a point under z^d + c is equivalent to
boundedness at every place, and escape at a single place is certified by
the same valuation lock-in rule as in the p-adic case -- so non-
preperiodicity admits finite certificates.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import sympy

from . import _polyint as P
from .dyncore import _as_d, OrbitResult, OrbitStatus
from .errors import PreconditionError, UnresolvedError

DEFAULT_FF_CAP = 64
DEFAULT_FF_DEGREE_CAP = 1 << 16

_T = sympy.Symbol("t")


def _q(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


def _poly_divmod(f: list, g: list):
    """Quotient and remainder over Q (coefficients become Fractions)."""
    f = P.normalize(f)
    g = P.normalize(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [_q(c) for c in f]
    dg = len(g) - 1
    lead = _q(g[-1])
    quot = [Fraction(0)] * max(0, len(rem) - dg)
    while len(rem) - 1 >= dg and any(rem):
        k = len(rem) - 1 - dg
        qc = rem[-1] / lead
        quot[k] = qc
        if qc:
            for i in range(dg):
                rem[k + i] -= qc * _q(g[i])
        rem.pop()
        while rem and rem[-1] == 0:
            rem.pop()
    return P.normalize(quot), P.normalize(rem)


def _poly_gcd_q(f: list, g: list) -> list:
    """Monic gcd over Q via the integer modular gcd."""
    fi, _ = P.to_integer(f)
    gi, _ = P.to_integer(g)
    if not fi:
        h = gi
    elif not gi:
        h = fi
    else:
        h = P.gcd_modular(fi, gi)
    h = P.normalize(h)
    if not h:
        return []
    lead = _q(h[-1])
    return [_q(c) / lead for c in h]


@dataclass(frozen=True)
class RatFunc:
    """Element of Q(t) in canonical form: numerator and denominator coprime,
    denominator monic.  Coefficients are Fractions, lowest degree first."""

    num: tuple
    den: tuple

    @staticmethod
    def make(num, den=(1,)) -> "RatFunc":
        num = P.normalize([_q(c) for c in num])
        den = P.normalize([_q(c) for c in den])
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return RatFunc(num=(), den=(Fraction(1),))
        g = _poly_gcd_q(list(num), list(den))
        if len(g) > 1:
            num, _ = _poly_divmod(num, g)
            den, _ = _poly_divmod(den, g)
        lead = den[-1]
        num = [c / lead for c in num]
        den = [c / lead for c in den]
        return RatFunc(num=tuple(num), den=tuple(den))

    @staticmethod
    def constant(x) -> "RatFunc":
        x = _q(x)
        return RatFunc(num=(x,) if x else (), den=(Fraction(1),))

    @staticmethod
    def t() -> "RatFunc":
        return RatFunc(num=(Fraction(0), Fraction(1)), den=(Fraction(1),))

    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    @property
    def degree(self) -> int:
        """deg f = max(deg num, deg den); the degree map of Q(t)."""
        return max(len(self.num) - 1, len(self.den) - 1)

    def __add__(self, other: "RatFunc") -> "RatFunc":
        n = P.add(
            P.mul(list(self.num), list(other.den)),
            P.mul(list(other.num), list(self.den)),
        )
        return RatFunc.make(n, P.mul(list(self.den), list(other.den)))

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.make(
            P.mul(list(self.num), list(other.num)),
            P.mul(list(self.den), list(other.den)),
        )

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            raise ValueError("negative powers not supported")
        # num and den are coprime, so no re-reduction is needed
        return RatFunc(
            num=tuple(P.power(list(self.num), k)) if self.num else (),
            den=tuple(P.power(list(self.den), k)),
        )

    def __str__(self) -> str:
        return f"{_poly_str(self.num)}/{_poly_str(self.den)}"


class FFPlaceKind(enum.Enum):
    FINITE = "finite"
    INFINITE = "infinite"


@dataclass(frozen=True)
class FFPlace:
    """A place of Q(t): a monic irreducible pi (weight deg pi) or the degree
    place at infinity (weight 1)."""

    kind: FFPlaceKind
    pi: Optional[tuple] = None  # monic irreducible, Fraction coeffs

    @staticmethod
    def infinite() -> "FFPlace":
        return FFPlace(kind=FFPlaceKind.INFINITE)

    @staticmethod
    def finite(pi) -> "FFPlace":
        pi = P.normalize([_q(c) for c in pi])
        if len(pi) < 2:
            raise PreconditionError("finite place needs a nonconstant polynomial")
        lead = pi[-1]
        pi = tuple(c / lead for c in pi)
        if not _is_irreducible(pi):
            raise PreconditionError(f"{_poly_str(pi)} is not irreducible over Q")
        return FFPlace(kind=FFPlaceKind.FINITE, pi=pi)

    @property
    def weight(self) -> int:
        return 1 if self.kind is FFPlaceKind.INFINITE else len(self.pi) - 1

    def __str__(self) -> str:
        if self.kind is FFPlaceKind.INFINITE:
            return "deg"
        return _poly_str(self.pi)


def _is_irreducible(pi: tuple) -> bool:
    expr = sum(sympy.Rational(c.numerator, c.denominator) * _T**k for k, c in enumerate(pi))
    return bool(sympy.Poly(expr, _T).is_irreducible)


def _poly_ord(f, pi: tuple) -> int:
    """Multiplicity of the monic polynomial pi in f (f nonzero)."""
    count = 0
    cur = list(f)
    while True:
        q, r = _poly_divmod(cur, list(pi))
        if r:
            return count
        count += 1
        cur = q


def ff_ord(f: RatFunc, v: FFPlace) -> int:
    """ord_v(f): multiplicity of pi at a finite place, deg den - deg num at
    the infinite place."""
    if f.is_zero:
        raise PreconditionError("ord of the zero function is undefined")
    if v.kind is FFPlaceKind.INFINITE:
        return (len(f.den) - 1) - (len(f.num) - 1)
    return _poly_ord(f.num, v.pi) - _poly_ord(f.den, v.pi)


def _den_places(*fs: RatFunc) -> list[FFPlace]:
    """Finite places where some argument has a pole (irreducible factors of
    the denominators)."""
    seen = {}
    for f in fs:
        if len(f.den) <= 1:
            continue
        expr = sum(
            sympy.Rational(c.numerator, c.denominator) * _T**k
            for k, c in enumerate(f.den)
        )
        _, factors = sympy.factor_list(sympy.Poly(expr, _T))
        for fac, _mult in factors:
            poly = sympy.Poly(fac, _T)
            coeffs = [Fraction(sympy.Rational(c)) for c in reversed(poly.all_coeffs())]
            lead = coeffs[-1]
            pi = tuple(c / lead for c in coeffs)
            seen[pi] = FFPlace(kind=FFPlaceKind.FINITE, pi=pi)
    return [seen[k] for k in sorted(seen, key=lambda pi: (len(pi), [str(c) for c in pi]))]


def _coerce(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, str):
        return parse_ratfunc(x)
    return RatFunc.constant(x)


def ff_preperiodic(
    a,
    c,
    d,
    cap: int = DEFAULT_FF_CAP,
    degree_cap: int = DEFAULT_FF_DEGREE_CAP,
) -> OrbitResult:
    """Exact orbit analysis of a under z^d + c in Q(t).

    PREPERIODIC on an exact repeat; ESCAPED (certified not preperiodic) when
    some place locks into the valuation-escape regime, with the certifying
    place attached; BOUNDED_UNRESOLVED when the cap or degree cap runs out.
    """
    d = _as_d(d)
    a = _coerce(a)
    c = _coerce(c)
    inf = FFPlace.infinite()
    ord_inf_c = ff_ord(c, inf) if not c.is_zero else None
    seen = {}
    z = a
    for step in range(cap + 1):
        key = (z.num, z.den)
        if key in seen:
            return OrbitResult(
                status=OrbitStatus.PREPERIODIC,
                tail=seen[key],
                period=step - seen[key],
            )
        seen[key] = step
        if not z.is_zero:
            o = ff_ord(z, inf)
            if o < 0 and (ord_inf_c is None or d * o < ord_inf_c):
                return OrbitResult(
                    status=OrbitStatus.ESCAPED, step=step, place=inf
                )
            for v in _den_places(z):
                oz = ff_ord(z, v)
                oc = ff_ord(c, v) if not c.is_zero else None
                if oz < 0 and (oc is None or d * oz < oc):
                    return OrbitResult(
                        status=OrbitStatus.ESCAPED, step=step, place=v
                    )
        if z.degree * d > degree_cap:
            return OrbitResult(status=OrbitStatus.BOUNDED_UNRESOLVED, cap=step)
        z = z**d + c
    return OrbitResult(status=OrbitStatus.BOUNDED_UNRESOLVED, cap=cap)


class FFStatus(enum.Enum):
    EXACT_ZERO = "exact-zero"
    EXACT_POSITIVE = "exact-positive"
    UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class FFPlaceReport:
    place: FFPlace
    status: FFStatus
    q: Optional[Fraction] = None

    def to_json(self) -> dict:
        out = {"place": str(self.place), "weight": self.place.weight,
               "status": self.status.value}
        if self.q is not None:
            out["q"] = str(self.q)
        return out


def ff_local_green(
    a,
    c,
    v: FFPlace,
    d,
    cap: int = DEFAULT_FF_CAP,
    degree_cap: int = DEFAULT_FF_DEGREE_CAP,
) -> FFPlaceReport:
    """Exact local Green's value q = lim d^{-n} max(0, -ord_v(G_{n+1})).

    Mirrors the p-adic computation with |.|_v = e^{-ord_v}; everything is
    exact arithmetic in Q(t), so the lock-in certificate is unconditional.
    """
    d = _as_d(d)
    a = _coerce(a)
    c = _coerce(c)
    pre = ff_preperiodic(a, c, d, cap=min(cap, 32), degree_cap=degree_cap)
    if pre.status is OrbitStatus.PREPERIODIC:
        return FFPlaceReport(place=v, status=FFStatus.EXACT_ZERO, q=Fraction(0))
    ord_c = ff_ord(c, v) if not c.is_zero else None
    ord_a = ff_ord(a, v) if not a.is_zero else None
    if (ord_a is None or ord_a >= 0) and (ord_c is None or ord_c >= 0):
        return FFPlaceReport(place=v, status=FFStatus.EXACT_ZERO, q=Fraction(0))
    w = a**d + c
    for i in range(cap + 1):
        if not w.is_zero:
            o = ff_ord(w, v)
            if o < 0 and (ord_c is None or d * o < ord_c):
                return FFPlaceReport(
                    place=v,
                    status=FFStatus.EXACT_POSITIVE,
                    q=Fraction(-o, d**i),
                )
            if o >= 0 and (ord_c is None or ord_c >= 0):
                return FFPlaceReport(place=v, status=FFStatus.EXACT_ZERO, q=Fraction(0))
        if w.degree * d > degree_cap:
            break
        w = w**d + c
    return FFPlaceReport(place=v, status=FFStatus.UNRESOLVED)


@dataclass(frozen=True)
class FFHeightReport:
    total: Optional[Fraction]
    places: tuple
    partial: bool

    def to_json(self) -> dict:
        return {
            "value": str(self.total) if self.total is not None else None,
            "partial": self.partial,
            "places": [r.to_json() for r in self.places],
        }


def ff_height(
    a, c, d, cap: int = DEFAULT_FF_CAP, degree_cap: int = DEFAULT_FF_DEGREE_CAP
) -> FFHeightReport:
    """Exact height sum_v N_v q_v over the places of Q(t).

    Only the infinite place and the pole places of a and c can contribute;
    every other place is certified zero by the ultrametric rule.  The total
    is an exact rational (None if any place is unresolved).
    """
    d = _as_d(d)
    a = _coerce(a)
    c = _coerce(c)
    places = [FFPlace.infinite()] + _den_places(a, c)
    reports = [
        ff_local_green(a, c, v, d, cap=cap, degree_cap=degree_cap) for v in places
    ]
    partial = any(r.status is FFStatus.UNRESOLVED for r in reports)
    total = None
    if not partial:
        total = sum(
            (Fraction(r.place.weight) * r.q for r in reports), Fraction(0)
        )
    return FFHeightReport(total=total, places=tuple(reports), partial=partial)


def ff_trivial_check(c) -> bool:
    """Whether z^d + c is conjugate to a map over the constants of Q(t):
    true exactly when c is itself constant."""
    return _coerce(c).is_constant


def ff_product_formula_residual(f: RatFunc) -> int:
    """sum_v N_v ord_v(f) over all places; exactly 0 for nonzero f."""
    if f.is_zero:
        raise PreconditionError("product formula applies to nonzero functions")
    total = ff_ord(f, FFPlace.infinite())
    for v in _den_places(f):
        total += v.weight * ff_ord(f, v)
    # numerator places
    num_f = RatFunc.make(f.den, f.num)  # 1/f swaps poles and zeros
    for v in _den_places(num_f):
        total += v.weight * ff_ord(f, v)
    return total


# ---------------------------------------------------------------------------
# Text format: "num/den" with integer-coefficient polynomials in t
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(
    r"(?P<sign>[+-]?)\s*(?:(?P<coef>\d+(?:/\d+)?)\s*\*?\s*)?"
    r"(?P<var>t)?(?:\^(?P<exp>\d+))?\s*"
)


def _parse_poly(text: str) -> list:
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, Fraction] = {}
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
        sign = -1 if m.group("sign") == "-" else 1
        coef = m.group("coef")
        var = m.group("var")
        exp = m.group("exp")
        if coef is None and var is None:
            raise ValueError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
        k = (int(exp) if exp else 1) if var else 0
        c = Fraction(coef) if coef else Fraction(1)
        coeffs[k] = coeffs.get(k, Fraction(0)) + sign * c
        pos = m.end()
    out = [Fraction(0)] * (max(coeffs) + 1)
    for k, c in coeffs.items():
        out[k] = c
    return P.normalize(out)


def _poly_str(coeffs) -> str:
    coeffs = list(coeffs)
    if not coeffs:
        return "0"
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        if k == 0:
            body = str(abs(c))
        else:
            mag = abs(c)
            coef = "" if mag == 1 else f"{mag}"
            body = f"{coef}t"
            if k > 1:
                body += f"^{k}"
        sign = "-" if c < 0 else ("+" if parts else "")
        parts.append(sign + body)
    return "".join(parts) or "0"


def parse_ratfunc(text: str) -> RatFunc:
    """Parse "num/den", e.g. "t^2+t/1"; a missing denominator means 1."""
    s = text.strip()
    if s.count("/") > 1:
        # allow rational coefficients only in the no-denominator form
        raise ValueError(f"ambiguous '/' in {text!r}; write num/den with integer "
                         "coefficients")
    if "/" in s:
        num_s, den_s = s.rsplit("/", 1)
        return RatFunc.make(_parse_poly(num_s), _parse_poly(den_s))
    return RatFunc.make(_parse_poly(s))
