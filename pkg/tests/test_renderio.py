"""Deterministic rendering and export."""

from fractions import Fraction

import pytest

from unicrit.errors import PreconditionError
from unicrit.persolve import difference_poly, solve_roots
from unicrit.renderio import (
    Image,
    Viewport,
    export_roots,
    overlay_roots,
    render_mset,
    write_ppm,
)


def test_ppm_trivials():
    assert write_ppm(Image(1, 1, bytes((255, 255, 255)))) == b"P6\n1 1\n255\n\xff\xff\xff"
    two = write_ppm(Image(2, 1, bytes((0, 0, 0, 255, 255, 255))))
    assert two == b"P6\n2 1\n255\n\x00\x00\x00\xff\xff\xff"
    img = Image(1, 1, bytes((1, 2, 3)))
    assert write_ppm(img) == write_ppm(img)


def test_default_viewport_alignment():
    vp = Viewport.default_for(0, 2)
    # Gaussian integers in the window land exactly on samples
    for z in (1j, -1j, 0j, -1 + 0j, -2 + 0j, 1 + 1j):
        px = vp.pixel_of(z)
        assert px is not None and vp.sample(*px) == z


def test_render_deterministic_across_threads_and_runs():
    a = render_mset(0, 2, max_iter=48)
    b = render_mset(0, 2, max_iter=48, threads=7)
    c = render_mset(0, 2, max_iter=48)
    assert write_ppm(a) == write_ppm(b) == write_ppm(c)


def test_render_witness_pixels():
    img0 = render_mset(0, 2)
    img1 = render_mset(1, 2)
    vp = Viewport.default_for(0, 2)
    at_i = vp.pixel_of(1j)
    assert img0.rgb_at(*at_i) == (0, 0, 0)
    assert img1.rgb_at(*at_i) != (0, 0, 0)
    for cz in (0j, -1 + 0j, -2 + 0j):
        assert img0.rgb_at(*vp.pixel_of(cz)) == (0, 0, 0)
    # far outside both sets: brightest band
    assert img0.rgb_at(*vp.pixel_of(1.4 - 1.9j)) != (0, 0, 0)


def test_render_root_of_unity_twist_identical():
    assert write_ppm(render_mset(1, 2, max_iter=32)) == write_ppm(
        render_mset(-1, 2, max_iter=32)
    )


def test_overlay_marks_containing_pixels():
    rs = solve_roots(difference_poly(0, 2, 3, 1))  # roots 0 and -1
    vp = Viewport.default_for(0, 2)
    img = overlay_roots(render_mset(0, 2, max_iter=32), vp, rs)
    for r in rs.roots:
        px = vp.pixel_of(complex(r.value))
        assert img.rgb_at(*px) == (255, 40, 40)


def test_export_csv_and_json():
    rs = solve_roots(difference_poly(0, 2, 3, 1))
    csv = export_roots(rs, "csv").decode()
    lines = csv.strip().split("\n")
    assert lines[0] == "re,im,multiplicity,inclusion_radius"
    assert len(lines) == 3
    assert lines[1].startswith("-1")  # sorted by (re, im)
    js = export_roots(rs, "json")
    import json

    payload = json.loads(js)
    assert payload["degree"] == 4
    assert [r["multiplicity"] for r in payload["roots"]] == [2, 2]


def test_export_empty_rootset():
    rs = solve_roots([1])  # constant: no roots
    assert export_roots(rs, "csv") == b"re,im,multiplicity,inclusion_radius\n"


def test_export_conjugate_ordering_fixed():
    rs = solve_roots([1, 0, 1])  # +-i
    csv = export_roots(rs, "csv").decode().strip().split("\n")
    assert csv[1].split(",")[1].startswith("-1")  # -i first


def test_export_rejects_unknown_format():
    rs = solve_roots([0, 1])
    with pytest.raises(PreconditionError):
        export_roots(rs, "xml")


def test_viewport_validation():
    with pytest.raises(PreconditionError):
        Viewport(Fraction(0), Fraction(0), Fraction(-1), Fraction(1), 4, 4)
    with pytest.raises(PreconditionError):
        Viewport(Fraction(0), Fraction(0), Fraction(1), Fraction(1), 0, 4)
