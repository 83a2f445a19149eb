"""Command-line surface: thin adapters over the library modules.

Subcommands: render | green | preper-solve | equidist | height | ffheight |
conj-search | orbit.  Exit codes: 0 success, 2 precondition violations,
3 budget/unresolved outcomes (partial output is still written), 64 usage
errors.  An optional --config file holds key=value pairs for any long flag;
explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from ._rational import parse_exact
from .errors import (
    BudgetError,
    DegreeCapError,
    PreconditionError,
    PrecisionError,
    UnicritError,
    UnresolvedError,
)

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_BUDGET = 3
EXIT_USAGE = 64


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _rational(text: str) -> Fraction:
    g = parse_exact(text)
    if not g.is_rational:
        raise argparse.ArgumentTypeError(f"expected a rational number, got {text!r}")
    return g.re


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    sys.stdout.write(text)


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("MANDEL_ARITH_THREADS")
    return int(env) if env else 1


def _build_parser() -> _Parser:
    p = _Parser(prog="unicrit", description=__doc__)
    p.add_argument("--config", help="key=value file merged under the flags")
    p.add_argument("--threads", type=int, default=None,
                   help="worker hint (env MANDEL_ARITH_THREADS as fallback)")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("orbit", help="orbit classification of a under z^d + c")
    sp.add_argument("--a", required=True)
    sp.add_argument("--c", required=True)
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--mode", choices=["exact", "numeric"], default="exact")
    sp.add_argument("--cap", type=int, default=4096)
    sp.add_argument("--precision", type=int, default=53)
    sp.add_argument("--out")

    sp = sub.add_parser("green", help="Green's function value with certified error")
    sp.add_argument("--a", required=True)
    sp.add_argument("--c", required=True)
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--target-error", type=float, default=1e-12)
    sp.add_argument("--out")

    sp = sub.add_parser("render", help="render M_a with Green level-set shading")
    sp.add_argument("--a", required=True)
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--pixels", type=int, default=256)
    sp.add_argument("--max-iter", type=int, default=96)
    sp.add_argument("--bands", type=int, default=8)
    sp.add_argument("--out", required=True, help="output PPM path")

    sp = sub.add_parser("preper-solve", help="roots of G_l - G_m with multiplicity")
    sp.add_argument("--a", required=True)
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--precision", type=int, default=128)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--out")

    sp = sub.add_parser("equidist", help="potential gap / discrimination reports")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", help="second point: run the discrimination search")
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--ell", type=int, default=6)
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--radius", type=float, default=4.0)
    sp.add_argument("--samples", type=int, default=256)
    sp.add_argument("--out")

    sp = sub.add_parser("height", help="adelic height over Q (value, error, places)")
    sp.add_argument("--a", required=True, type=_rational)
    sp.add_argument("--c", required=True, type=_rational)
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--arch-error", type=float, default=1e-12)
    sp.add_argument("--canonical", action="store_true",
                    help="canonical height of the point a under z^d + c instead")
    sp.add_argument("--out")

    sp = sub.add_parser("ffheight", help="exact height over the function field Q(t)")
    sp.add_argument("--a", required=True, help='rational function, e.g. "t/1"')
    sp.add_argument("--c", required=True)
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--cap", type=int, default=64)
    sp.add_argument("--out")

    sp = sub.add_parser("conj-search", help="common preperiodic parameters for a and b")
    sp.add_argument("--a", required=True, type=_rational)
    sp.add_argument("--b", required=True, type=_rational)
    sp.add_argument("--d", type=int, default=2)
    sp.add_argument("--lmax", type=int, required=True)
    sp.add_argument("--degree-cap", type=int, default=1 << 14)
    sp.add_argument("--out")
    return p


def _merge_config(argv: list[str]) -> list[str]:
    """Inject config-file pairs as flags before the user flags (flags win)."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    if idx + 1 >= len(argv):
        raise _UsageError("--config needs a path")
    path = argv[idx + 1]
    rest = argv[:idx] + argv[idx + 2 :]
    if not rest:
        raise _UsageError("--config needs a subcommand")
    flags: list[str] = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise _UsageError(f"config line without '=': {line!r}")
        key, value = line.split("=", 1)
        flags.extend([f"--{key.strip()}", value.strip()])
    return [rest[0]] + flags + rest[1:]


def _run(args) -> int:
    cmd = args.command
    if cmd == "orbit":
        from .dyncore import detect_preperiodic_exact, orbit_numeric

        a = parse_exact(args.a)
        c = parse_exact(args.c)
        if args.mode == "exact":
            res = detect_preperiodic_exact(a, c, args.d, cap=args.cap)
        else:
            res = orbit_numeric(
                a.to_complex(), c.to_complex(), args.d,
                max_iter=args.cap, working_precision=args.precision,
            )
        _emit({"a": str(a), "c": str(c), "d": args.d, "result": res.to_json()}, args.out)
        return EXIT_BUDGET if res.status.value == "bounded-unresolved" else EXIT_OK

    if cmd == "green":
        from .greens import green_param

        a = parse_exact(args.a)
        c = parse_exact(args.c)
        g = green_param(a, c, args.d, target_error=args.target_error)
        _emit(
            {"a": str(a), "c": str(c), "d": args.d,
             "target_error": args.target_error, **g.to_json()},
            args.out,
        )
        return EXIT_OK

    if cmd == "render":
        from .renderio import render_mset, write_ppm, Viewport

        a = parse_exact(args.a)
        vp = Viewport.default_for(a.to_complex(), args.d, pixels=args.pixels)
        img = render_mset(
            a.to_complex(), args.d, vp,
            max_iter=args.max_iter, shading_bands=args.bands,
            threads=_threads(args),
        )
        Path(args.out).write_bytes(write_ppm(img))
        _emit(
            {"a": str(a), "d": args.d, "out": args.out,
             "pixels": [img.width, img.height], "max_iter": args.max_iter},
            None,
        )
        return EXIT_OK

    if cmd == "preper-solve":
        from .persolve import difference_poly, solve_roots
        from .renderio import export_roots

        a = _rational(args.a)
        dp = difference_poly(a, args.d, args.ell, args.m)
        rs = solve_roots(dp, precision_bits=args.precision)
        blob = export_roots(rs, args.format)
        if args.out:
            Path(args.out).write_bytes(blob)
        else:
            sys.stdout.write(blob.decode())
        sys.stderr.write(
            f"degree {rs.degree}, {len(rs.roots)} distinct roots, "
            f"{rs.precision_bits} bits\n"
        )
        return EXIT_OK

    if cmd == "equidist":
        from .equidist import discriminate, potential_gap

        if args.b is not None:
            a = _rational(args.a)
            b = _rational(args.b)
            res = discriminate(a, b, args.d, ell_max=args.ell)
            _emit({"a": str(a), "b": str(b), "d": args.d, **res.to_json()}, args.out)
            return EXIT_OK if res.distinguished else EXIT_BUDGET
        a = _rational(args.a)
        rep = potential_gap(
            a, args.d, args.ell, args.m,
            circle_radius=args.radius, samples=args.samples,
        )
        _emit({"a": str(a), "d": args.d, **rep.to_json()}, args.out)
        return EXIT_OK

    if cmd == "height":
        from .adelic import adelic_height, canonical_height_point

        if args.canonical:
            rep = canonical_height_point(args.c, args.a, args.d, arch_error=args.arch_error)
        else:
            rep = adelic_height(args.a, args.c, args.d, arch_error=args.arch_error)
        _emit(
            {"a": str(args.a), "c": str(args.c), "d": args.d,
             "canonical": bool(args.canonical), **rep.to_json()},
            args.out,
        )
        return EXIT_BUDGET if rep.partial else EXIT_OK

    if cmd == "ffheight":
        from .funcfield import ff_height, parse_ratfunc

        a = parse_ratfunc(args.a)
        c = parse_ratfunc(args.c)
        rep = ff_height(a, c, args.d, cap=args.cap)
        _emit({"a": str(a), "c": str(c), "d": args.d, **rep.to_json()}, args.out)
        return EXIT_BUDGET if rep.partial else EXIT_OK

    if cmd == "conj-search":
        from .conjsearch import common_preperiodic_params, verify_common

        rep = common_preperiodic_params(
            args.a, args.b, args.d, args.lmax, degree_cap=args.degree_cap
        )
        ver = verify_common(rep)
        _emit({**rep.to_json(), "verified": ver.all_passed}, args.out)
        return EXIT_BUDGET if rep.partial else EXIT_OK

    raise _UsageError(f"unknown command {cmd!r}")


def dispatch(argv: list[str]) -> int:
    """Parse argv, run the subcommand, map errors to exit codes."""
    parser = _build_parser()
    try:
        argv = _merge_config(list(argv))
        args = parser.parse_args(argv)
        return _run(args)
    except _UsageError as e:
        sys.stderr.write(f"usage error: {e}\n")
        return EXIT_USAGE
    except (PreconditionError, DegreeCapError) as e:
        sys.stderr.write(f"precondition error: {e}\n")
        return EXIT_PRECONDITION
    except (BudgetError, UnresolvedError, PrecisionError) as e:
        sys.stderr.write(f"budget/unresolved: {e}\n")
        return EXIT_BUDGET
    except UnicritError as e:
        sys.stderr.write(f"error: {e}\n")
        return 1
    except ValueError as e:
        sys.stderr.write(f"usage error: {e}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
