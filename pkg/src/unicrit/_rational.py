"""Exact scalar arithmetic helpers: Gaussian rationals and input parsing.

Everything here is exact; no floats are produced except on explicit request.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union


@dataclass(frozen=True)
class GaussianRational:
    """A complex number with rational real and imaginary parts.

    Supports exactly the operations needed by exact orbit iteration:
    addition, multiplication, integer powers, and the exact squared modulus.
    """

    re: Fraction
    im: Fraction

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __pow__(self, n: int) -> "GaussianRational":
        if n < 0:
            raise ValueError("negative powers not supported")
        result = GaussianRational(Fraction(1), Fraction(0))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def abs2(self) -> Fraction:
        """Exact |z|^2."""
        return self.re * self.re + self.im * self.im

    @property
    def is_rational(self) -> bool:
        return self.im == 0

    def to_complex(self) -> complex:
        return complex(self.re, self.im)

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


ExactNumber = Union[int, Fraction, GaussianRational]


def as_gaussian(x: ExactNumber) -> GaussianRational:
    """Coerce an exact scalar to a GaussianRational."""
    if isinstance(x, GaussianRational):
        return x
    return GaussianRational(Fraction(x), Fraction(0))


_IMAG_RE = re.compile(
    r"^(?P<re>[+-]?\d+(?:/\d+)?)?(?P<im>[+-]?(?:\d+(?:/\d+)?)?)[ij]$"
)


def parse_exact(text: str) -> GaussianRational:
    """Parse an exact scalar from text.

    Accepted forms: "3", "-7/2", "i", "-i", "2i", "1+i", "1/2-3/4i".
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    if s[-1] in "ij":
        m = _IMAG_RE.match(s)
        if not m:
            raise ValueError(f"cannot parse exact complex scalar: {text!r}")
        re_part = m.group("re")
        im_part = m.group("im")
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        return GaussianRational(
            Fraction(re_part) if re_part else Fraction(0), Fraction(im_part)
        )
    return GaussianRational(Fraction(s), Fraction(0))


def bit_size(x: ExactNumber) -> int:
    """Rough size of an exact scalar in bits (numerators plus denominators)."""
    if isinstance(x, GaussianRational):
        return bit_size(x.re) + bit_size(x.im)
    f = Fraction(x)
    return f.numerator.bit_length() + f.denominator.bit_length()
