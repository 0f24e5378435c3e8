from __future__ import annotations

import subprocess
import sys

import pytest

from stabkit import qchk
from stabkit.cli import main
from stabkit.stabilizer import CheckMatrix


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_and_params(capsys, tmp_path):
    path = tmp_path / "steane.qchk"
    assert run(capsys, "construct", "--code", "steane", "-o", str(path))[0] == 0
    assert path.read_text().splitlines()[0] == "QCHK v1 n=7 r=6"
    code, out, _ = run(capsys, "params", "--file", str(path))
    assert code == 0
    assert out.splitlines() == ["n=7", "k=1", "r=6", "weights 4:6"]


def test_construct_to_stdout(capsys):
    code, out, _ = run(capsys, "construct", "--code", "bitflip")
    assert code == 0 and out.startswith("QCHK v1 n=3 r=2\n")


def test_logicals(capsys):
    code, out, _ = run(capsys, "logicals", "--code", "steane")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("X1: ") and lines[1].startswith("Z1: ")


def test_distance(capsys):
    code, out, _ = run(capsys, "distance", "--code", "shor", "--max-weight", "3")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "d=3" and lines[2] == "degenerate=true"
    code, out, _ = run(capsys, "distance", "--code", "steane", "--max-weight", "2", "--workers", "2")
    assert code == 0 and out.strip() == "d>2"


def test_klcheck(capsys):
    code, out, _ = run(capsys, "klcheck", "--code", "steane", "--max-weight", "1")
    assert code == 0 and out.strip() == "pass: 22 errors of weight <= 1"
    code, out, _ = run(capsys, "klcheck", "--code", "bitflip", "--max-weight", "1")
    assert code == 0 and out.startswith("fail")


def test_simulate_csv(capsys):
    argv = ["simulate", "--code", "steane", "--eps", "0.01", "0.05", "--trials", "2000", "--seed", "7"]
    code, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv, "--workers", "8")
    assert code == 0 and first == second
    lines = first.splitlines()
    assert lines[0] == "eps,trials,failures,nonconverged,ler,ci_lo,ci_hi,seconds"
    assert len(lines) == 3 and lines[1].startswith("0.01,2000,")


def test_simulate_timing_fills_seconds(capsys):
    _, out, _ = run(capsys, "simulate", "--code", "bitflip", "--channel", "bitflip", "--eps", "0.1", "--trials", "100", "--timing")
    assert out.splitlines()[1].split(",")[-1] != ""


@pytest.mark.parametrize(
    "argv",
    [
        ["params", "--code", "nosuchcode"],
        ["params", "--file", "/nonexistent/code.qchk"],
        ["simulate", "--code", "steane", "--eps", "0.9"],
        ["distance", "--code", "steane", "--max-weight", "0"],
    ],
)
def test_config_errors_exit_one(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and "error" in err


def test_argument_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as info:
        main(["params", "--code", "steane", "--file", "x"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["simulate", "--code", "steane"])
    assert info.value.code == 1


def test_bp_on_non_css_code_exits_one(capsys, tmp_path):
    path = tmp_path / "five.qchk"
    qchk.write(path, CheckMatrix.from_paulis(["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]))
    code, _, err = run(capsys, "simulate", "--file", str(path), "--eps", "0.1", "--decoder", "bp")
    assert code == 1 and "CSS" in err
    assert run(capsys, "simulate", "--file", str(path), "--eps", "0.1", "--trials", "50")[0] == 0


def test_resource_limit_exits_two(capsys):
    code, _, err = run(capsys, "klcheck", "--code", "surface:5", "--max-weight", "1")
    assert code == 2 and "resource limit" in err
    code, _, _ = run(capsys, "simulate", "--code", "surface:5", "--eps", "0.01")
    assert code == 2


def test_bad_qchk_file_exits_one(capsys, tmp_path):
    path = tmp_path / "bad.qchk"
    path.write_text("QCHK v1 n=2 r=1\n1x00\n")
    assert run(capsys, "params", "--file", str(path))[0] == 1


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "stabkit.cli", "params", "--code", "surface:3"],
        capture_output=True, text=True, check=True,
    )
    assert out.stdout.splitlines()[:2] == ["n=13", "k=1"]
