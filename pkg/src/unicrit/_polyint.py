"""Dense exact polynomial arithmetic over the integers and rationals.

Coefficient lists are stored lowest degree first.  Integer coefficients are
plain Python ints; rational coefficients are fractions.Fraction.  The gcd is
computed by the modular method: images modulo word-size primes, CRT-lifted,
verified by exact trial division.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import UnluckyPrimeError

Poly = list  # coefficient list, lowest degree first


def normalize(p: Poly) -> Poly:
    """Strip trailing zero coefficients (zero polynomial becomes [])."""
    n = len(p)
    while n and p[n - 1] == 0:
        n -= 1
    return p[:n]


def degree(p: Poly) -> int:
    """Degree of p, with deg 0 = -1 by convention."""
    return len(normalize(p)) - 1


def add(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = out[i] + c
    return normalize(out)


def sub(p: Poly, q: Poly) -> Poly:
    out = list(p) + [0] * max(0, len(q) - len(p))
    for i, c in enumerate(q):
        out[i] = out[i] - c
    return normalize(out)


def mul(p: Poly, q: Poly) -> Poly:
    p = normalize(p)
    q = normalize(q)
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def scale(p: Poly, c) -> Poly:
    if c == 0:
        return []
    return [a * c for a in p]


def power(p: Poly, n: int) -> Poly:
    result = [1]
    base = p
    while n:
        if n & 1:
            result = mul(result, base)
        base_needed = n > 1
        if base_needed:
            base = mul(base, base)
        n >>= 1
    return result


def differentiate(p: Poly) -> Poly:
    return normalize([i * c for i, c in enumerate(p)][1:])


def eval_at(p: Poly, x):
    """Horner evaluation; works for Fraction, int, complex, mpmath types."""
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def is_monic(p: Poly) -> bool:
    p = normalize(p)
    return bool(p) and p[-1] == 1


def content(p: Poly) -> int:
    """Positive gcd of the integer coefficients (0 for the zero polynomial)."""
    g = 0
    for c in p:
        g = math.gcd(g, c)
        if g == 1:
            return 1
    return g


def primitive(p: Poly) -> Poly:
    """Primitive part with positive leading coefficient."""
    p = normalize(p)
    if not p:
        return []
    g = content(p)
    if p[-1] < 0:
        g = -g
    return [c // g for c in p]


def to_integer(p: Poly) -> tuple[Poly, int]:
    """Clear Fraction denominators: returns (integer poly, lcm denominator)."""
    den = 1
    for c in p:
        if isinstance(c, Fraction):
            den = den * c.denominator // math.gcd(den, c.denominator)
    out = []
    for c in p:
        if isinstance(c, Fraction):
            v = c * den
            out.append(v.numerator)  # exact: den is a multiple of c.denominator
        else:
            out.append(c * den)
    return normalize(out), den


def div_exact(f: Poly, g: Poly) -> Poly:
    """Exact division f / g; raises if the division leaves a remainder.

    Works over the rationals internally; returns integer coefficients when
    they all turn out integral.
    """
    f = normalize(f)
    g = normalize(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if not f:
        return []
    df, dg = len(f) - 1, len(g) - 1
    if df < dg:
        raise ValueError("exact division failed: degree of dividend too small")
    rem = [Fraction(c) for c in f]
    lead = Fraction(g[-1])
    quot = [Fraction(0)] * (df - dg + 1)
    for k in range(df - dg, -1, -1):
        c = rem[k + dg] / lead
        quot[k] = c
        if c:
            for i in range(dg + 1):
                rem[k + i] -= c * g[i]
    if any(rem):
        raise ValueError("exact division failed: nonzero remainder")
    if all(c.denominator == 1 for c in quot):
        return normalize([c.numerator for c in quot])
    return normalize(quot)


def divides(g: Poly, f: Poly) -> bool:
    """True iff g divides f exactly over the rationals."""
    try:
        div_exact(f, g)
        return True
    except (ValueError, ZeroDivisionError):
        return False


# ---------------------------------------------------------------------------
# Modular gcd
# ---------------------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_stream(start: int = (1 << 62) - 1):
    n = start
    while n > 3:
        if _is_prime(n):
            yield n
        n -= 2


def _gf_rem(f: list, g: list, p: int) -> list:
    """Remainder of f modulo g over GF(p); f, g lowest-first, g nonzero."""
    f = [c % p for c in f]
    while f and f[-1] == 0:
        f.pop()
    dg = len(g) - 1
    inv = pow(g[-1], p - 2, p)
    while len(f) - 1 >= dg:
        q = f[-1] * inv % p
        off = len(f) - 1 - dg
        if q:
            for i in range(dg):
                f[off + i] = (f[off + i] - q * g[i]) % p
        f.pop()
        while f and f[-1] == 0:
            f.pop()
    return f


def _gf_gcd_monic(f: list, g: list, p: int) -> list:
    """Monic gcd over GF(p)."""
    a = [c % p for c in f]
    b = [c % p for c in g]
    a = a and normalize(a)
    b = b and normalize(b)
    while b:
        a, b = b, _gf_rem(a, b, p)
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]


def gcd_modular(f: Poly, g: Poly, max_primes: int = 512) -> Poly:
    """Primitive gcd of integer polynomials by the modular CRT method.

    Images are computed modulo 62-bit primes (skipping primes dividing a
    leading coefficient and unlucky primes detected by degree mismatch),
    CRT-lifted with symmetric residues, and the stabilized candidate is
    verified by exact trial division into both inputs.
    """
    f = primitive(f)
    g = primitive(g)
    if not f:
        return g
    if not g:
        return f
    if degree(f) == 0 or degree(g) == 0:
        return [1]
    gamma = math.gcd(f[-1], g[-1])
    best_deg = None
    modulus = 0
    cand: list | None = None
    prev = None
    used = 0
    for p in _prime_stream():
        if used >= max_primes:
            break
        if f[-1] % p == 0 or g[-1] % p == 0:
            continue
        used += 1
        img = _gf_gcd_monic(f, g, p)
        d = len(img) - 1
        if d == 0:
            return [1]
        if best_deg is None or d < best_deg:
            best_deg = d
            modulus = 0
            cand = None
            prev = None
        elif d > best_deg:
            continue  # unlucky prime
        img = [c * gamma % p for c in img]
        if modulus == 0:
            modulus = p
            cand = [c if c <= p // 2 else c - p for c in img]
        else:
            inv = pow(modulus % p, p - 2, p)
            new = []
            for c_old, c_img in zip(cand, img):
                delta = (c_img - c_old) % p
                c = c_old + modulus * (delta * inv % p)
                m = modulus * p
                if c > m // 2:
                    c -= m
                elif c < -(m // 2):
                    c += m
                new.append(c)
            modulus *= p
            cand = new
        if cand == prev:
            h = primitive(cand)
            if divides(h, f) and divides(h, g):
                return h
        prev = list(cand)
    raise UnluckyPrimeError("modular gcd did not stabilize within the prime budget")


def squarefree_part(p: Poly) -> Poly:
    """Primitive squarefree part p / gcd(p, p')."""
    p = primitive(p)
    if degree(p) <= 0:
        return p
    g = gcd_modular(p, differentiate(p))
    if degree(g) == 0:
        return p
    return primitive(div_exact(p, g))


def yun_squarefree(p: Poly) -> list[tuple[Poly, int]]:
    """Squarefree decomposition by Yun's algorithm.

    Returns [(q, m)] with q primitive squarefree, pairwise coprime, and
    p = content * prod q^m.  Multiplicities m are exact.
    """
    p = primitive(p)
    if degree(p) <= 0:
        return []
    dp = differentiate(p)
    g = gcd_modular(p, dp)
    if degree(g) == 0:
        return [(p, 1)]
    out = []
    c = div_exact(p, g)
    d = sub(div_exact(dp, g), differentiate(c))
    i = 1
    while degree(c) > 0:
        q = gcd_modular(c, d) if normalize(d) else list(c)
        if degree(q) > 0:
            out.append((primitive(q), i))
        c = div_exact(c, q)
        if degree(c) <= 0:
            break
        d = sub(div_exact(d, q), differentiate(c))
        i += 1
    return out


def root_bound(p: Poly) -> float:
    """Fujiwara upper bound on the modulus of every complex root of p."""
    p = normalize(p)
    n = len(p) - 1
    if n < 1:
        return 0.0
    lead = math.log(abs(Fraction(p[-1])))
    best = -math.inf
    for k in range(1, n + 1):
        a = p[n - k]
        if a == 0:
            continue
        t = math.log(abs(Fraction(a))) - lead
        if k == n:
            t -= math.log(2)
        best = max(best, t / k)
    if best == -math.inf:
        return 0.0
    return 2.0 * math.exp(best)
