import json
import math
import os
import subprocess
import sys

import pytest
from typer.testing import CliRunner

import bergman_dirichlet.verify
from bergman_dirichlet.__main__ import BERGMAN_DIRICHLET_MAX_TERMS, app
from bergman_dirichlet.common import PROJECT_ROOT, DiskSpaceParams
from bergman_dirichlet.disk import kernel
from bergman_dirichlet.tables import read_csv_rows


def run(args: list, use_cli: bool, env: dict = None) -> int:
    """Run the command line, return the exit code."""
    if use_cli:
        # we use sys.executable -m to make sure we are running the right python
        process = subprocess.run(
            [sys.executable, "-m", "bergman_dirichlet"] + args,
            cwd=PROJECT_ROOT,
            env={**os.environ, **(env or {})},
            capture_output=True,
        )
        return process.returncode
    result = CliRunner().invoke(app, args, env=env)
    if result.exception is not None and not isinstance(result.exception, SystemExit):
        raise result.exception
    return result.exit_code


def read_rows(path) -> list:
    return read_csv_rows(path.read_text())


@pytest.mark.parametrize("use_cli", [True, False])
def test_disk_kernel(tmp_path, use_cli: bool):
    output = tmp_path / "kernel.csv"
    args = ["kernel", "--space", "disk", "--R", "1", "--alpha", "0", "--m", "0"]
    args += ["--z", "0.5,0", "--w", "0.5,0", "-f", str(output)]
    assert run(args, use_cli) == 0
    (row,) = read_rows(output)
    assert float(row["kernel_re"]) == pytest.approx(16 / (9 * math.pi), rel=1e-14)
    assert float(row["kernel_re"]) == pytest.approx(0.5658842, abs=1e-7)
    assert float(row["kernel_im"]) == 0
    assert float(row["z_re"]) == 0.5


@pytest.mark.parametrize("use_cli", [True, False])
def test_plane_kernel(tmp_path, use_cli: bool):
    output = tmp_path / "kernel.csv"
    args = ["kernel", "--space", "plane", "--nu", "1", "--m", "0"]
    args += ["--z", "1,0", "--w", "1,0", "--force-series", "-f", str(output)]
    assert run(args, use_cli) == 0
    (row,) = read_rows(output)
    assert float(row["kernel_re"]) == pytest.approx(0.8652560, abs=1e-7)


def test_csv_is_bit_exact(tmp_path):
    output = tmp_path / "kernel.csv"
    args = ["kernel", "--R", "2", "--alpha", "1.5", "--m", "2"]
    args += ["--z", "0.3,-1.1", "--w", "-0.7,0.2", "-f", str(output)]
    assert run(args, False) == 0
    (row,) = read_rows(output)
    expected = kernel(DiskSpaceParams(radius=2, alpha=1.5, m=2), 0.3 - 1.1j, -0.7 + 0.2j)
    assert complex(float(row["kernel_re"]), float(row["kernel_im"])) == expected


def test_norm_json(tmp_path):
    output = tmp_path / "norm.json"
    args = ["norm", "--space", "plane", "--nu", "1", "--m", "1"]
    args += ["-c", "1,0;0,0;0,1", "--format", "json", "-f", str(output)]
    assert run(args, False) == 0
    content = json.loads(output.read_text())
    assert content["command"] == "norm"
    assert content["params"] == {"space": "plane", "nu": 1.0, "m": 1, "tolerance": 1e-14}
    # ||1||^2 = pi and ||z^2||^2 = pi (2!)^2 / (1! nu^2) = 4 pi
    assert content["summary"]["norm_sq"] == pytest.approx(5 * math.pi, rel=1e-14)
    assert content["summary"]["member"] is True
    assert [row["n"] for row in content["rows"]] == [0, 1, 2]
    assert content["rows"][1]["contribution"] == 0


def test_norm_from_a_file(tmp_path):
    coefficients = tmp_path / "coefficients.txt"
    coefficients.write_text("# the classical Dirichlet space\n1 0\n2 0\n3 0\n")
    output = tmp_path / "norm.json"
    args = ["norm", "--R", "1", "--alpha", "0", "--m", "1"]
    args += ["--coefficients-file", str(coefficients), "--format", "json", "-f", str(output)]
    assert run(args, False) == 0
    content = json.loads(output.read_text())
    # pi (1 + 4 * 1 + 9 * 2)
    assert content["summary"]["norm_sq"] == pytest.approx(23 * math.pi, rel=1e-14)


@pytest.mark.parametrize("use_cli", [True, False])
def test_gram(tmp_path, use_cli: bool):
    output = tmp_path / "gram.json"
    args = ["gram", "--R", "1", "--alpha", "0.5", "--m", "2"]
    args += ["-p", "0,0;0.5,0.1;-0.3,0.6", "--format", "json", "-f", str(output)]
    assert run(args, use_cli) == 0
    content = json.loads(output.read_text())
    assert len(content["rows"]) == 9
    assert content["summary"]["min_eigenvalue"] > 0
    entries = {(row["i"], row["j"]): complex(row["re"], row["im"]) for row in content["rows"]}
    assert entries[0, 1] == entries[1, 0].conjugate()


@pytest.mark.parametrize("use_cli", [True, False])
def test_converge(tmp_path, use_cli: bool):
    output = tmp_path / "converge.csv"
    args = ["converge", "--nu", "1", "--m", "1", "--z", "1,0", "--w", "0,0"]
    args += ["--radii", "20,5,10", "-f", str(output)]
    assert run(args, use_cli) == 0
    rows = read_rows(output)
    assert [float(row["R"]) for row in rows] == [5, 10, 20]
    for row in rows:
        assert float(row["abs_error"]) == pytest.approx(
            1 / (math.pi * float(row["R"]) ** 2), abs=1e-14
        )
    assert list(rows[0]) == [
        "R",
        "re(K_disk)",
        "im(K_disk)",
        "re(K_plane)",
        "im(K_plane)",
        "abs_error",
    ]


def test_converge_uniform(tmp_path):
    output = tmp_path / "converge.csv"
    args = ["converge", "--nu", "1", "--uniform", "--bound", "1", "--grid-size", "2"]
    args += ["--radii", "5,10", "-f", str(output)]
    assert run(args, False) == 0
    rows = read_rows(output)
    assert list(rows[0]) == ["R", "max_abs_error"]
    assert float(rows[1]["max_abs_error"]) < float(rows[0]["max_abs_error"])


@pytest.mark.parametrize("use_cli", [True, False])
def test_limit_check(tmp_path, use_cli: bool):
    output = tmp_path / "limit.csv"
    args = ["limit-check", "--m", "1", "--xi", "1,0", "--rhos", "100,1000", "-f", str(output)]
    assert run(args, use_cli) == 0
    rows = read_rows(output)
    assert list(rows[0]) == ["rho", "abs_error", "rho_times_error"]
    assert float(rows[1]["abs_error"]) < float(rows[0]["abs_error"])


@pytest.mark.parametrize("use_cli", [True, False])
@pytest.mark.parametrize(
    "args",
    [
        ["kernel", "--R", "1", "--alpha", "0", "--z", "1,0", "--w", "0,0"],
        ["kernel", "--space", "sphere", "--z", "0,0", "--w", "0,0"],
        ["kernel", "--space", "plane", "--R", "1", "--z", "0,0", "--w", "0,0"],
        ["kernel", "--R", "1", "--alpha", "-2", "--z", "0,0", "--w", "0,0"],
        ["norm", "--nu", "1", "--space", "plane"],
        ["norm", "--nu", "1", "--space", "plane", "-c", "1,0", "--format", "xml"],
        ["limit-check", "--rhos", "0,10"],
    ],
)
def test_invalid_input_exits_with_1(args, use_cli: bool):
    assert run(args, use_cli) == 1


@pytest.mark.parametrize("use_cli", [True, False])
def test_numerical_failure_exits_with_2(use_cli: bool):
    args = ["kernel", "--space", "plane", "--nu", "1", "--m", "1", "--z", "3,0", "--w", "3,0"]
    assert run(args + ["--max-terms", "2"], use_cli) == 2
    assert run(args, use_cli, env={BERGMAN_DIRICHLET_MAX_TERMS: "2"}) == 2
    assert run(args, use_cli) == 0


def test_verify(tmp_path):
    output = tmp_path / "verify.json"
    assert run(["verify", "--format", "json", "-f", str(output)], False) == 0
    content = json.loads(output.read_text())
    assert content["summary"] == {"failed": 0}
    assert all(row["passed"] for row in content["rows"])


@pytest.mark.parametrize("use_cli", [True, False])
@pytest.mark.parametrize("option", [["--tolerance", "0"], ["--max-terms", "0"]])
def test_explicit_zero_is_not_replaced_by_the_default(option, use_cli: bool):
    args = ["kernel", "--R", "1", "--alpha", "0", "--z", "0.5,0", "--w", "0.5,0"]
    assert run(args + option, use_cli) == 1


def test_a_failed_check_exits_with_2(tmp_path, monkeypatch):
    monkeypatch.setattr(
        bergman_dirichlet.verify, "CHECKS", [("always_fails", lambda rng, tolerance: 1.0, 0.5)]
    )
    output = tmp_path / "verify.csv"
    result = CliRunner().invoke(app, ["verify", "-f", str(output)])
    assert result.exit_code == 2
    assert "FAIL always_fails" in result.output
    (row,) = read_rows(output)
    assert row["check"] == "always_fails"
    assert row["passed"] == "false"
