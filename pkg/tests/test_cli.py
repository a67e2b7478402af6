import pytest

from dhwp.cli import run_cli


@pytest.fixture()
def cache_dir(tmp_path):
    return str(tmp_path / "cache")


def test_feasible_exit_codes(capsys):
    assert run_cli(["feasible", "8", "4", "8", "3", "4"]) == 0
    assert run_cli(["feasible", "8", "4", "8", "3", "3"]) == 2
    out = capsys.readouterr().out
    assert "not met" in out


def test_solve_writes_verifiable_certificate(tmp_path, cache_dir, capsys):
    out_file = str(tmp_path / "cert.txt")
    code = run_cli(
        ["--cache-dir", cache_dir, "solve", "16", "4", "8", "9", "6", "--out", out_file]
    )
    assert code == 0
    assert run_cli(["verify", out_file]) == 0
    assert run_cli(["verify", out_file, "--spec", "16", "4", "8", "9", "6"]) == 0
    assert run_cli(["verify", out_file, "--spec", "16", "4", "8", "6", "9"]) == 2
    assert "valid" in capsys.readouterr().out


def test_solve_statuses(cache_dir):
    assert run_cli(["--cache-dir", cache_dir, "solve", "10", "4", "8", "5", "4"]) == 2
    assert run_cli(["--cache-dir", cache_dir, "solve", "15", "3", "5", "12", "2"]) == 3
    # the order-45 counts forced through an open base are unsupported
    assert run_cli(["--cache-dir", cache_dir, "solve", "45", "3", "5", "42", "2"]) == 3


def test_solve_summary_format(cache_dir, capsys):
    code = run_cli(
        ["--cache-dir", cache_dir, "--format", "summary", "solve", "8", "4", "8", "1", "6"]
    )
    assert code == 0
    assert "15 factors" not in capsys.readouterr().out  # v=8 has 7 factors


def test_verify_detects_tampering(tmp_path, cache_dir, capsys):
    out_file = str(tmp_path / "cert.txt")
    run_cli(["--cache-dir", cache_dir, "solve", "8", "4", "8", "2", "5", "--out", out_file])
    text = open(out_file).read()
    lines = text.splitlines()
    # reverse the direction of the first cycle of the second factor
    first, rest = lines[2][1:].split(")", 1)
    reversed_cycle = "(" + ",".join(reversed(first.split(","))) + ")"
    lines[2] = reversed_cycle + rest
    open(out_file, "w").write("\n".join(lines) + "\n")
    assert run_cli(["verify", out_file]) == 2
    assert "INVALID" in capsys.readouterr().out


def test_verify_missing_file_is_io_error():
    assert run_cli(["verify", "/nonexistent/path.txt"]) == 74


def test_verify_multi_entry_file(tmp_path, cache_dir, capsys):
    a = str(tmp_path / "a.txt")
    b = str(tmp_path / "b.txt")
    run_cli(["--cache-dir", cache_dir, "solve", "8", "4", "8", "1", "6", "--out", a])
    run_cli(["--cache-dir", cache_dir, "solve", "8", "4", "8", "2", "5", "--out", b])
    both = str(tmp_path / "both.txt")
    open(both, "w").write(open(a).read() + "\n" + open(b).read())
    assert run_cli(["verify", both]) == 0
    out = capsys.readouterr().out
    assert out.count("valid") == 2
    assert run_cli(["verify", both, "--spec", "8", "4", "8", "1", "6"]) == 64


def test_solve_budget_exhausted_exit(cache_dir):
    # odd pair with even blow-up factor: no assembly applies, and the tiny
    # node budget stops the fallback search immediately
    code = run_cli(
        ["--cache-dir", cache_dir, "--nodes", "50", "--seconds", "5",
         "solve", "30", "3", "5", "14", "15"]
    )
    assert code == 4


def test_usage_errors_exit_64():
    assert run_cli(["bogus"]) == 64
    assert run_cli(["oracle", "6", "--profile", "nonsense"]) == 64
    assert run_cli(["atlas", "generate"]) == 64


def test_oracle_exit_codes(capsys):
    assert run_cli(["--seconds", "30", "oracle", "6", "--profile", "3:5", "--prove-none"]) == 2
    assert run_cli(["oracle", "8", "--profile", "4:1,8:6"]) == 0
    out = capsys.readouterr().out
    assert "found" in out


def test_oracle_budget_exit(capsys):
    assert run_cli(["--nodes", "40", "oracle", "6", "--profile", "6:5", "--prove-none"]) == 4


def test_atlas_list_and_verify_all(cache_dir, capsys):
    assert run_cli(["--cache-dir", cache_dir, "atlas", "list"]) == 0
    listing = capsys.readouterr().out
    assert "HWP*(8;4^1,8^6)" in listing
    assert "unknown-open" in listing
    assert run_cli(["--cache-dir", cache_dir, "atlas", "verify-all"]) == 0
    assert "0 invalid" in capsys.readouterr().out


def test_module_invocation(tmp_path):
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "dhwp.cli", "feasible", "8", "4", "8", "1", "6"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "necessary conditions met" in proc.stdout


def test_atlas_generate(cache_dir, capsys):
    assert run_cli(["--cache-dir", cache_dir, "atlas", "generate", "8,2,8,7,0"]) == 0
    assert run_cli(["--cache-dir", cache_dir, "atlas", "generate", "15,3,5,12,2"]) == 3
