"""Command-line interface: payload on stdout, diagnostics on stderr, exit codes."""

import json
import os
import subprocess
import sys

import pytest

QUARTIC_TEXT = "2\n x**2*y**2 + x + y;\n x*y + x + y + 1;\n"
BINOMIAL_TEXT = "2 3\n x**2*y - z*x;\n x**2*z - y**2*x;\n"


def run_cli(*args, stdin=None, env_extra=None):
    env = dict(os.environ)
    env.pop("HELIOS_SEED", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "helios", *args],
        capture_output=True,
        text=True,
        input=stdin,
        env=env,
        timeout=300,
    )


@pytest.fixture()
def quartic_file(tmp_path):
    path = tmp_path / "quartic.sys"
    path.write_text(QUARTIC_TEXT)
    return str(path)


@pytest.fixture()
def binomial_file(tmp_path):
    path = tmp_path / "binom.sys"
    path.write_text(BINOMIAL_TEXT)
    return str(path)


def test_solve_json_deterministic(quartic_file):
    a = run_cli("solve", quartic_file, "--seed", "21320", "--json", "--quiet")
    b = run_cli("solve", quartic_file, "--seed", "21320", "--json", "--quiet")
    assert a.returncode == 0
    assert a.stdout == b.stdout
    payload = json.loads(a.stdout)
    assert payload["seed"] == 21320
    assert len(payload["solutions"]) == 4


def test_solve_blocks_output(quartic_file):
    result = run_cli("solve", quartic_file, "--seed", "21320", "--quiet")
    assert result.returncode == 0
    assert result.stdout.count("the solution for t :") == 4
    assert "==" in result.stdout


def test_solve_progress_only_on_stderr(quartic_file):
    chatty = run_cli("solve", quartic_file, "--seed", "1", "--json")
    quiet = run_cli("solve", quartic_file, "--seed", "1", "--json", "--quiet")
    assert chatty.stdout == quiet.stdout
    assert quiet.stderr == ""
    assert "paths" in chatty.stderr


def test_mixvol_output(quartic_file):
    result = run_cli("mixvol", quartic_file)
    assert result.returncode == 0
    assert result.stdout == "total degree: 8\nmixed volume: 4\n"


def test_maps_output(binomial_file):
    result = run_cli("maps", binomial_file)
    assert result.returncode == 0
    assert result.stdout.splitlines() == [
        "(x = 0, y = L1, z = L2)",
        "(x = L1, y = L1**2, z = L1**3)",
        "(x = L1, y = 0, z = 0)",
    ]


def test_maps_rejects_non_binomial(quartic_file):
    result = run_cli("maps", quartic_file)
    assert result.returncode == 1
    assert result.stdout == ""


def test_stdin_input():
    result = run_cli("mixvol", "-", stdin=QUARTIC_TEXT)
    assert result.returncode == 0
    assert "mixed volume: 4" in result.stdout


def test_env_seed_default(quartic_file):
    via_env = run_cli(
        "solve", quartic_file, "--json", "--quiet", env_extra={"HELIOS_SEED": "21320"}
    )
    via_flag = run_cli("solve", quartic_file, "--seed", "21320", "--json", "--quiet")
    assert via_env.stdout == via_flag.stdout
    overridden = run_cli(
        "solve",
        quartic_file,
        "--seed",
        "7",
        "--json",
        "--quiet",
        env_extra={"HELIOS_SEED": "21320"},
    )
    assert json.loads(overridden.stdout)["seed"] == 7


def test_usage_errors_exit_two(quartic_file):
    assert run_cli("frobnicate", quartic_file).returncode == 2
    assert run_cli("solve").returncode == 2
    missing = run_cli("solve", "/nonexistent/file.sys")
    assert missing.returncode == 2
    assert missing.stdout == ""
    assert "error" in missing.stderr.lower()


def test_parse_errors_exit_two(tmp_path):
    bad = tmp_path / "bad.sys"
    bad.write_text("2\n x + ;\n y;\n")
    result = run_cli("solve", str(bad))
    assert result.returncode == 2
    assert "line" in result.stderr


def test_family_to_stdout_and_file(tmp_path):
    result = run_cli("family", "cyclic", "3")
    assert result.returncode == 0
    assert result.stdout.splitlines()[0] == "3"
    out = tmp_path / "c3.sys"
    piped = run_cli("family", "cyclic", "3", "-o", str(out))
    assert piped.returncode == 0
    assert out.read_text() == result.stdout


def test_witness_subcommand(tmp_path):
    sphere = tmp_path / "sphere.sys"
    sphere.write_text("1 3\n x**2 + y**2 + z**2 - 1;\n")
    result = run_cli("witness", str(sphere), "--dim", "2", "--seed", "7")
    assert result.returncode == 0
    assert result.stdout.count("the solution for t :") == 2
    assert result.stdout.splitlines()[0] == "3"  # sliced system header
    again = run_cli("witness", str(sphere), "--dim", "2", "--seed", "7")
    assert again.stdout == result.stdout


def test_cascade_subcommand(binomial_file):
    result = run_cli("cascade", binomial_file, "--top", "2", "--seed", "11")
    assert result.returncode == 0
    lines = result.stdout.splitlines()
    assert any(line.startswith("dimension 2 : 1 candidates") for line in lines)
    assert any(line.startswith("dimension 1 :") for line in lines)


def test_track_endpoints_and_steps(tmp_path, quartic_file):
    start = tmp_path / "start.sys"
    sols = tmp_path / "start.sols"
    make = run_cli("family", "cyclic", "3")  # just to have a second system handy
    # build a start system and solutions via solve of the start itself:
    # track from x**2 - 1 to x**2 - 4
    g = tmp_path / "g.sys"
    f = tmp_path / "f.sys"
    g.write_text("1\n x**2 - 1;\n")
    f.write_text("1\n x**2 - 4;\n")
    sols.write_text(
        "t :  0.00000000000000E+00  0.00000000000000E+00\n"
        "m : 1\n"
        "the solution for t :\n"
        " x :  1.00000000000000E+00  0.00000000000000E+00\n"
        "== err : 0.000E+00 = rco : 1.000E+00 = res : 0.000E+00 =\n"
    )
    endpoints = run_cli(
        "track", "--target", str(f), "--start", str(g), "--sols", str(sols), "--seed", "3"
    )
    assert endpoints.returncode == 0
    assert endpoints.stdout.count("the solution for t :") == 1

    stepped = run_cli(
        "track",
        "--target",
        str(f),
        "--start",
        str(g),
        "--sols",
        str(sols),
        "--step",
        "--seed",
        "3",
    )
    assert stepped.returncode == 0
    lines = [json.loads(line) for line in stepped.stdout.splitlines()]
    assert lines, "expected per-step output"
    ts = [entry["t"] for entry in lines]
    assert ts == sorted(ts)
    assert ts[-1] == 1.0
    assert set(lines[0]) == {"t", "step", "iterations", "residual", "x"}
    # the stepped endpoint agrees with the batch endpoint
    end = lines[-1]["x"][0]
    assert abs(complex(end[0], end[1]) ** 2 - 4) <= 1e-6
