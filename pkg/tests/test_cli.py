"""CLI surface: thin-adapter equivalence, exit codes, config merging."""

import json

import pytest

from unicrit.cli import EXIT_BUDGET, EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE, dispatch


def run(capsys, *argv):
    code = dispatch(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_green_matches_library(capsys):
    code, out, _ = run(capsys, "green", "--a", "0", "--c", "2", "--d", "2")
    assert code == EXIT_OK
    payload = json.loads(out)
    from unicrit.greens import green_param

    direct = green_param(0, 2, 2)
    assert payload["value"] == direct.value
    assert payload["error"] == direct.error


def test_height_trivial_zero(capsys):
    code, out, _ = run(capsys, "height", "--a", "0", "--c", "-1", "--d", "2")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["value"] == 0 and payload["error"] == 0


def test_height_matches_library(capsys):
    code, out, _ = run(capsys, "height", "--a", "0", "--c", "1/3", "--d", "2")
    payload = json.loads(out)
    from unicrit.adelic import adelic_height
    from fractions import Fraction

    direct = adelic_height(0, Fraction(1, 3), 2)
    assert payload["value"] == direct.value


def test_ffheight(capsys):
    code, out, _ = run(capsys, "ffheight", "--a", "0/1", "--c", "t/1", "--d", "2")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["value"] == "1"


def test_orbit_exit_codes(capsys):
    code, out, _ = run(capsys, "orbit", "--a", "0", "--c", "i", "--d", "2")
    assert code == EXIT_OK
    assert json.loads(out)["result"]["status"] == "preperiodic-exact"
    # bounded-unresolved outcomes surface as exit 3 with output written
    code, out, _ = run(capsys, "orbit", "--a", "0", "--c", "1/4", "--d", "2")
    assert code == EXIT_BUDGET
    assert json.loads(out)["result"]["status"] == "bounded-unresolved"


def test_conj_search_precondition_exit(capsys):
    code, _, err = run(capsys, "conj-search", "--a", "0", "--b", "0", "--d", "2", "--lmax", "3")
    assert code == EXIT_PRECONDITION
    assert "a^d = b^d" in err


def test_conj_search_small(capsys, tmp_path):
    out_path = tmp_path / "report.json"
    code, out, _ = run(
        capsys, "conj-search", "--a", "0", "--b", "1", "--d", "2",
        "--lmax", "3", "--out", str(out_path),
    )
    assert code == EXIT_OK
    payload = json.loads(out_path.read_text())
    assert payload["rational_roots"] == ["-2", "-1", "0"]
    assert payload["verified"] is True


def test_usage_error_exit(capsys):
    assert run(capsys, "no-such-command")[0] == EXIT_USAGE
    assert run(capsys, "green", "--a", "0")[0] == EXIT_USAGE  # missing --c


def test_render_writes_ppm(capsys, tmp_path):
    out_path = tmp_path / "m.ppm"
    code, _, _ = run(
        capsys, "render", "--a", "0", "--d", "2", "--pixels", "32",
        "--max-iter", "24", "--out", str(out_path),
    )
    assert code == EXIT_OK
    header = b"P6\n32 32\n255\n"
    blob = out_path.read_bytes()
    assert blob.startswith(header) and len(blob) == len(header) + 3 * 32 * 32


def test_preper_solve_csv(capsys, tmp_path):
    out_path = tmp_path / "roots.csv"
    code, _, err = run(
        capsys, "preper-solve", "--a", "0", "--d", "2", "--ell", "3",
        "--m", "1", "--out", str(out_path),
    )
    assert code == EXIT_OK
    lines = out_path.read_text().strip().split("\n")
    assert lines[0] == "re,im,multiplicity,inclusion_radius" and len(lines) == 3


def test_equidist_gap(capsys):
    code, out, _ = run(
        capsys, "equidist", "--a", "0", "--d", "2", "--ell", "6", "--m", "1",
        "--samples", "32",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["gap"] > 0 and payload["gap_log10"] < 0


def test_equidist_discriminate(capsys):
    code, out, _ = run(capsys, "equidist", "--a", "0", "--b", "1", "--d", "2")
    assert code == EXIT_OK
    assert json.loads(out)["distinguished"] is True


def test_config_file_merge(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("c=2\nd=2\n")
    code, out, _ = run(capsys, "green", "--config", str(cfg), "--a", "0")
    assert code == EXIT_OK
    with_flags = json.loads(out)
    # explicit flags win over the config value
    code, out, _ = run(
        capsys, "green", "--config", str(cfg), "--a", "0", "--c", "3"
    )
    assert json.loads(out)["c"] == "3"
    assert with_flags["c"] == "2"
