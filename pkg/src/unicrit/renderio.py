"""Rendering of generalized Mandelbrot sets with Green's-function level-set
shading, plus deterministic PPM / CSV / JSON export of root sets.

The pixel grid is corner-sampled: the parameter at pixel (i, j) is
x0 + i*w/W + (y0 - j*h/H) i, with the map exact in the rationals of the
viewport.  The default viewport puts every Gaussian integer of the window
exactly on a pixel sample, so witness parameters like i land on pixel
centers of the classification, not between them.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .dyncore import _as_d
from .errors import PreconditionError


@dataclass(frozen=True)
class Viewport:
    """Axis-aligned window with a pixel raster; the pixel-to-plane map is
    affine and exact over the rationals of this config."""

    center_re: Fraction
    center_im: Fraction
    width: Fraction
    height: Fraction
    pixels_x: int
    pixels_y: int

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise PreconditionError("viewport extents must be positive")
        if self.pixels_x < 1 or self.pixels_y < 1:
            raise PreconditionError("pixel counts must be positive")

    @staticmethod
    def default_for(a, d: int, pixels: int = 256) -> "Viewport":
        """[-2.5, 1.5] x [-2, 2] for small |a|, scaled by max(1, |a|^d)."""
        s = Fraction(max(1.0, abs(complex(a)) ** int(d))).limit_denominator(16)
        return Viewport(
            center_re=Fraction(-1, 2) * s,
            center_im=Fraction(0),
            width=4 * s,
            height=4 * s,
            pixels_x=pixels,
            pixels_y=pixels,
        )

    def sample(self, i: int, j: int) -> complex:
        x = self.center_re - self.width / 2 + Fraction(i) * self.width / self.pixels_x
        y = self.center_im + self.height / 2 - Fraction(j) * self.height / self.pixels_y
        return complex(x, y)

    def pixel_of(self, z: complex) -> Optional[tuple[int, int]]:
        x0 = float(self.center_re - self.width / 2)
        y1 = float(self.center_im + self.height / 2)
        i = math.floor((z.real - x0) / float(self.width) * self.pixels_x + 0.5)
        j = math.floor((y1 - z.imag) / float(self.height) * self.pixels_y + 0.5)
        if 0 <= i < self.pixels_x and 0 <= j < self.pixels_y:
            return (i, j)
        return None


@dataclass(frozen=True)
class Image:
    width: int
    height: int
    pixels: bytes  # RGB, row-major

    def rgb_at(self, i: int, j: int) -> tuple[int, int, int]:
        off = 3 * (j * self.width + i)
        return tuple(self.pixels[off : off + 3])


def render_mset(
    a,
    d,
    viewport: Optional[Viewport] = None,
    max_iter: int = 96,
    shading_bands: int = 8,
    threads: int = 1,
) -> Image:
    """Escape-classification image of M_a with banded Green shading.

    Pixels whose orbit stays below the certified escape radius through the
    budget render black (interior / unresolved-bounded); exterior pixels get
    gray bands at the geometric Green levels 2^-k.  Output bytes depend only
    on the configuration: pixels are independent, and the `threads` hint
    never changes the result.
    """
    d = _as_d(d)
    if viewport is None:
        viewport = Viewport.default_for(a, d)
    del threads  # vectorized evaluation; accepted for interface parity
    w, h = viewport.pixels_x, viewport.pixels_y
    x0 = float(viewport.center_re - viewport.width / 2)
    y1 = float(viewport.center_im + viewport.height / 2)
    xs = x0 + np.arange(w) * (float(viewport.width) / w)
    ys = y1 - np.arange(h) * (float(viewport.height) / h)
    c = xs[None, :] + 1j * ys[:, None]

    rstar = np.maximum(3.0, (2.0 * np.abs(c)) ** (1.0 / d))
    z = np.full_like(c, complex(a))
    alive = np.ones(c.shape, dtype=bool)
    green = np.zeros(c.shape, dtype=np.float64)
    for k in range(1, max_iter + 1):
        z[alive] = z[alive] ** d + c[alive]
        escaped = alive & (np.abs(z) > rstar)
        if escaped.any():
            green[escaped] = np.log(np.abs(z[escaped])) / float(d) ** (k - 1)
            alive[escaped] = False
        if not alive.any():
            break

    # bands at Green levels 2^-k; brighter = farther outside
    img = np.zeros((h, w, 3), dtype=np.uint8)
    outside = ~alive
    if outside.any():
        g = green[outside]
        band = np.clip(np.floor(-np.log2(np.maximum(g, 1e-300))), 0, shading_bands - 1)
        shade = (235 - band * (160.0 / max(1, shading_bands - 1))).astype(np.uint8)
        for ch in range(3):
            img[..., ch][outside] = shade
    return Image(width=w, height=h, pixels=img.tobytes())


def overlay_roots(image: Image, viewport: Viewport, rootset) -> Image:
    """Mark each root of a RootSet on its containing pixel (red)."""
    buf = bytearray(image.pixels)
    for r in rootset.roots:
        px = viewport.pixel_of(complex(r.value))
        if px is None:
            continue
        i, j = px
        off = 3 * (j * image.width + i)
        buf[off : off + 3] = bytes((255, 40, 40))
    return Image(width=image.width, height=image.height, pixels=bytes(buf))


def write_ppm(image: Image) -> bytes:
    """Binary PPM (P6, maxval 255, row-major); bit-exact serialization."""
    header = f"P6\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + image.pixels


def export_roots(rootset, fmt: str = "csv") -> bytes:
    """Root set as CSV (re,im,multiplicity,inclusion_radius) or JSON, sorted
    lexicographically by (re, im) for determinism."""
    rows = [
        (
            mp_repr(r.value.real),
            mp_repr(r.value.imag),
            r.multiplicity,
            repr(r.radius),
        )
        for r in rootset.roots
    ]
    rows.sort(key=lambda row: (float(row[0]), float(row[1])))
    if fmt.lower() == "csv":
        out = io.StringIO()
        out.write("re,im,multiplicity,inclusion_radius\n")
        for re_s, im_s, mult, rad in rows:
            out.write(f"{re_s},{im_s},{mult},{rad}\n")
        return out.getvalue().encode("ascii")
    if fmt.lower() == "json":
        payload = {
            "degree": rootset.degree,
            "precision_bits": rootset.precision_bits,
            "roots": [
                {
                    "re": re_s,
                    "im": im_s,
                    "multiplicity": mult,
                    "inclusion_radius": float(rad),
                }
                for re_s, im_s, mult, rad in rows
            ],
        }
        return (json.dumps(payload, indent=2, sort_keys=True) + "\n").encode("ascii")
    raise PreconditionError(f"unknown export format {fmt!r}")


def mp_repr(x) -> str:
    """Decimal string with enough digits to identify the root to its radius
    (30 significant digits; plain floats use their shortest round trip)."""
    if isinstance(x, float):
        return repr(x)
    from mpmath import mp, nstr

    return nstr(x, 30, strip_zeros=True)
