"""Command-line front end: payloads, exit codes, output stability, figures."""

from __future__ import annotations

import subprocess
import sys

import pytest

from diffprim.cli import run
from diffprim.report import payload_value


@pytest.fixture()
def field_file(tmp_path, example_field_text):
    path = tmp_path / "example.field"
    path.write_text(example_field_text)
    return str(path)


def test_trdeg_command(field_file):
    report = run(["trdeg", field_file, "--elements", "a", "--symbolic"])
    assert report.exit_status == 0
    assert payload_value(report, "trdeg") == "2"
    assert payload_value(report, "stabilization_order") == "1"
    assert payload_value(report, "method") == "symbolic"


def test_trdeg_constant_element(tmp_path):
    path = tmp_path / "f.field"
    path.write_text("generator x\ngenerator y\nderivation x = 1\nderivation y = 0\nelement b = y\n")
    report = run(["trdeg", str(path), "--elements", "b"])
    assert report.exit_status == 0
    assert payload_value(report, "trdeg") == "1"
    assert payload_value(report, "stabilization_order") == "0"


def test_wronskian_command(tmp_path):
    path = tmp_path / "line.field"
    path.write_text("generator t\nderivation t = 1\nelement s = t^2\n")
    report = run(["wronskian", str(path), "--elements", "t,s"])
    assert report.exit_status == 0
    assert payload_value(report, "wronskian") == "(t^2)/(1)"


def test_wkl_command():
    report = run(["wkl", "--k", "2", "--l", "3", "--format", "machine"])
    assert report.exit_status == 0
    rendered = payload_value(report, "wkl")
    assert rendered == "x^2*x' + x^2*y' - 2*x*x'*y - 2*x*y*y' + x'*y^2 + y^2*y'"
    bad = run(["wkl", "--k", "1", "--l", "1"])
    assert bad.exit_status == 2 and bad.status == "input-error"


def test_density_command(field_file):
    report = run(["density", field_file, "--a", "y", "--b", "x"])
    assert report.exit_status == 0
    assert payload_value(report, "p") == "t^2"
    assert payload_value(report, "candidate") == "(x^2 + y)/(1)"
    assert payload_value(report, "trdeg_pair") == "2"


def test_density_cap_exit(field_file):
    report = run(["density", field_file, "--a", "y", "--b", "x", "--max-p-degree", "1"])
    assert report.exit_status == 1 and report.status == "cap-exceeded"


def test_primitive_command(field_file):
    report = run(["primitive", field_file, "--format", "machine"])
    assert report.exit_status == 0
    assert payload_value(report, "primitive") == "(x^2 + y)/(1)"
    assert payload_value(report, "n") == "2"
    certs = [v for k, v in report.payload if k == "certificate"]
    assert certs == ["x", "y"]


def test_member_command(field_file):
    report = run(["member", field_file, "--target", "y", "--tower", "a"])
    assert report.exit_status == 0
    assert payload_value(report, "order") == "2"
    assert payload_value(report, "degree_bound") == "2"


def test_member_not_found(tmp_path):
    path = tmp_path / "f.field"
    path.write_text("generator x\ngenerator y\nderivation x = 1\nderivation y = 0\n")
    report = run(["member", str(path), "--target", "x", "--tower", "y", "--deg-cap", "3"])
    assert report.exit_status == 1
    assert report.status == "not-found"
    assert payload_value(report, "degree_cap") == "3"


def test_verify_lemmas(tmp_path):
    report = run(["verify-lemmas", "--k-max", "2"])
    assert report.exit_status == 0
    checks = [v for k, v in report.payload if k == "check"]
    assert checks and all(v.startswith("pass") for v in checks)
    assert payload_value(report, "failures") == "0"


def test_verify_lemmas_figure(tmp_path):
    figdir = tmp_path / "figs"
    report = run(["verify-lemmas", "--k-max", "2", "--figures", str(figdir)])
    assert report.exit_status == 0
    path = payload_value(report, "figure")
    assert path is not None and path.endswith("verify_lemmas.png")
    assert (figdir / "verify_lemmas.png").stat().st_size > 0


def test_trdeg_figure(field_file, tmp_path):
    figdir = tmp_path / "figs"
    report = run(["trdeg", field_file, "--elements", "a", "--figures", str(figdir)])
    assert report.exit_status == 0
    assert (figdir / "trdeg_stabilization.png").stat().st_size > 0


def test_machine_output_is_byte_stable(field_file):
    for argv in (
        ["primitive", field_file, "--format", "machine", "--seed", "11"],
        ["trdeg", field_file, "--elements", "a,x", "--format", "machine", "--seed", "7"],
        ["verify-lemmas", "--k-max", "2", "--format", "machine"],
        ["member", field_file, "--target", "x", "--tower", "a", "--format", "machine"],
    ):
        assert run(argv).render_machine() == run(argv).render_machine()


def test_density_with_factor_element(field_file):
    report = run(["density", field_file, "--a", "y", "--b", "x", "--c", "a"])
    assert report.exit_status == 0
    assert payload_value(report, "trdeg_candidate") == "2"


def test_no_symbolic_confirm_flag(field_file):
    report = run(["density", field_file, "--a", "y", "--b", "x",
                  "--no-symbolic-confirm", "--format", "machine"])
    assert report.exit_status == 0
    assert payload_value(report, "p") == "t^2"
    assert ("symbolic_confirm", "false") in report.config


def test_input_errors_exit_2(field_file, tmp_path):
    assert run(["trdeg", str(tmp_path / "missing.field"), "--elements", "a"]).exit_status == 2
    assert run(["trdeg", field_file, "--elements", "nope"]).exit_status == 2
    bad = tmp_path / "bad.field"
    bad.write_text("generator x\nderivation x = +\n")
    report = run(["trdeg", str(bad), "--elements", "x"])
    assert report.exit_status == 2 and report.status == "input-error"
    assert run(["primitive", field_file, "--elements", "y"]).exit_status == 2


def test_console_entry_point(field_file):
    proc = subprocess.run(
        [sys.executable, "-m", "diffprim", "density", field_file,
         "--a", "y", "--b", "x", "--format", "machine"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    lines = dict(
        line.split("\t", 1) for line in proc.stdout.strip().splitlines()
    )
    assert lines["p"] == "t^2"
    assert lines["status"] == "ok"
    assert lines["exit"] == "0"
