import json
import math

import pytest

from diskschwarz.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_schwarzian_subcommand(capsys):
    code, out, _ = run_cli(capsys, "schwarzian", "--f", "((1+z)/(1-z))^(1i)", "--at", "0")
    assert code == 0
    report = json.loads(out)
    assert abs(report["results"]["schwarzian"]["re"] - 4.0) <= 1e-12


def test_harmonic_schwarzian_subcommand(capsys):
    # q(0) = 0 kills the correction terms, leaving the analytic Schwarzian -6.
    code, out, _ = run_cli(
        capsys, "schwarzian", "--h", "z/(1-z)^2", "--q", "z", "--at", "0"
    )
    assert code == 0
    report = json.loads(out)
    assert abs(report["results"]["schwarzian"]["re"] + 6.0) <= 1e-12
    assert report["results"]["curvature_term"] >= 0.0


def test_criterion_subcommand(capsys):
    code, out, _ = run_cli(
        capsys, "criterion", "--f", "z/(1-z)^2", "--p", "classical", "--depth", "6"
    )
    assert code == 0
    report = json.loads(out)
    assert report["results"]["classification"] == "uniform-local"
    assert abs(report["results"]["minimal_C"] - 6.0) <= 1e-4


def test_valence_subcommand(capsys):
    code, out, _ = run_cli(capsys, "valence", "--f", "z^2", "--w", "0", "--r", "0.5")
    assert code == 0
    assert json.loads(out)["results"]["count"] == 2


def test_ode_subcommand(capsys):
    code, out, _ = run_cli(capsys, "ode", "--p", "param:1.5", "--delta", "1")
    assert code == 0
    report = json.loads(out)
    assert report["results"]["mu"] == 0.75
    assert abs(report["results"]["comparison"]["first_zero"] - math.tanh(math.pi)) <= 1e-8


def test_out_flag_writes_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out, _ = run_cli(
        capsys, "schwarzian", "--f", "z/(1-z)^2", "--at", "0", "--out", str(path)
    )
    assert code == 0
    assert out == ""
    report = json.loads(path.read_text())
    assert report["command"] == "schwarzian"


def test_lift_with_mesh_out(tmp_path, capsys):
    mesh_path = tmp_path / "surface.obj"
    code, out, _ = run_cli(
        capsys,
        "lift",
        "--h", "z",
        "--q", "0.5*z",
        "--at", "0.5,0.25",
        "--r", "0.8",
        "--depth", "3",
        "--mesh-out", str(mesh_path),
    )
    assert code == 0
    report = json.loads(out)
    assert abs(report["results"]["W"] - 0.125) <= 1e-9
    assert report["results"]["mesh"]["vertices"] == 3 * 7
    obj = mesh_path.read_text()
    assert obj.startswith("v ")
    sidecar = (tmp_path / "surface.obj.curvature.csv").read_text()
    assert sidecar.startswith("index,K")


def test_shear_subcommand(capsys):
    code, out, _ = run_cli(capsys, "shear", "--phi", "z/(1-z)^2", "--q", "z", "--at", "0.3")
    assert code == 0
    report = json.loads(out)
    assert report["results"]["h_minus_g_residual"] <= 1e-10


def test_gallery_only(capsys):
    code, out, _ = run_cli(capsys, "gallery", "--only", "koebe")
    assert code == 0
    assert json.loads(out)["results"]["passed"] is True


def test_gallery_hille_delta(capsys):
    code, out, _ = run_cli(capsys, "gallery", "--only", "hille", "--delta", "2")
    assert code == 0
    report = json.loads(out)
    case = report["results"]["cases"][0]
    sep = next(c for c in case["checks"] if c["label"] == "criterion-separation")
    assert sep["passed"] is True


def test_input_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "schwarzian", "--f", "1/(1-z", "--at", "0")
    assert code == 2
    assert "error" in err

    code, _, err = run_cli(capsys, "schwarzian", "--f", "z", "--at", "nonsense")
    assert code == 2

    code, _, err = run_cli(capsys, "criterion", "--f", "z", "--p", "bogus")
    assert code == 2

    code, _, err = run_cli(capsys, "gallery", "--only", "nope")
    assert code == 2


def test_numeric_error_exit_code(capsys):
    # contour through a solution of f(z) = 1
    code, _, err = run_cli(
        capsys, "valence", "--f", "((1+z)/(1-z))^(1i)", "--w", "1",
        "--r", repr(math.tanh(math.pi)),
    )
    assert code == 3
    assert "numeric" in err


def test_cross_process_determinism():
    # Byte-identical reports from two fresh interpreter runs.
    import subprocess
    import sys

    argv = [
        sys.executable, "-m", "diskschwarz.cli",
        "criterion", "--f", "z/(1-z)^2", "--p", "classical", "--depth", "6",
    ]
    first = subprocess.run(argv, capture_output=True, text=True, check=True)
    second = subprocess.run(argv, capture_output=True, text=True, check=True)
    assert first.stdout == second.stdout
    assert first.stdout.strip()


def test_unknown_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["schwarzian", "--nope", "1"])
    assert exc.value.code == 2
    err = capsys.readouterr().err
    assert "usage" in err


def test_missing_subcommand_exits_2():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
