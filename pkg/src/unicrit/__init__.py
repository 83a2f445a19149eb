"""Generalized Mandelbrot sets, Green's functions, adelic heights, and
preperiodic-parameter search for the unicritical family z^d + c."""

from ._rational import GaussianRational, parse_exact
from .dyncore import (
    Degree,
    IteratePoly,
    OrbitResult,
    OrbitStatus,
    detect_preperiodic_exact,
    iterate_poly,
    orbit_numeric,
)
from .greens import GreenValue, LaurentFit, escape_certificate, green_param, uniformizer_series
from .persolve import (
    DifferencePoly,
    Root,
    RootSet,
    difference_poly,
    solve_roots,
    verify_root,
)
from .equidist import (
    BoxGrid,
    EmpiricalMeasure,
    box_discrepancy,
    discriminate,
    potential_gap,
)
from .adelic import (
    HeightReport,
    Place,
    PlaceReport,
    PlaceStatus,
    adelic_height,
    canonical_height_point,
    galois_orbit_height,
    local_green_nonarch,
)
from .funcfield import (
    FFPlace,
    RatFunc,
    ff_height,
    ff_local_green,
    ff_ord,
    ff_preperiodic,
    ff_trivial_check,
    parse_ratfunc,
)
from .conjsearch import (
    CommonRootReport,
    common_preperiodic_params,
    difference_gcd,
    verify_common,
)
from .renderio import Image, Viewport, export_roots, overlay_roots, render_mset, write_ppm

__version__ = "0.1.0"

__all__ = [
    "BoxGrid",
    "CommonRootReport",
    "Degree",
    "DifferencePoly",
    "EmpiricalMeasure",
    "FFPlace",
    "GaussianRational",
    "GreenValue",
    "HeightReport",
    "Image",
    "IteratePoly",
    "LaurentFit",
    "OrbitResult",
    "OrbitStatus",
    "Place",
    "PlaceReport",
    "PlaceStatus",
    "RatFunc",
    "Root",
    "RootSet",
    "Viewport",
    "adelic_height",
    "box_discrepancy",
    "canonical_height_point",
    "common_preperiodic_params",
    "detect_preperiodic_exact",
    "difference_gcd",
    "difference_poly",
    "discriminate",
    "escape_certificate",
    "export_roots",
    "ff_height",
    "ff_local_green",
    "ff_ord",
    "ff_preperiodic",
    "ff_trivial_check",
    "galois_orbit_height",
    "green_param",
    "iterate_poly",
    "local_green_nonarch",
    "orbit_numeric",
    "overlay_roots",
    "parse_exact",
    "parse_ratfunc",
    "potential_gap",
    "render_mset",
    "solve_roots",
    "uniformizer_series",
    "verify_common",
    "verify_root",
    "write_ppm",
]
