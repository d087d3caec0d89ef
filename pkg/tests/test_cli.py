"""Report format, determinism, and exit-code behavior of the command line."""
import json

from onrefl import cli
from onrefl.records import VerificationRecord


def run_cli(tmp_path, name, *extra):
    out = tmp_path / f"{name}.txt"
    code = cli.main(["--out", str(out), *extra])
    return code, out.read_text()


def strip_ms(text):
    return [line.rsplit("\t", 1)[0] for line in text.splitlines()]


def test_tsv_shape(tmp_path):
    code, text = run_cli(tmp_path, "z1n", "--suite", "z1n")
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "theorem\tparams\tlhs\trhs\tpass\tms"
    assert len(lines) == 6
    for line in lines[1:]:
        cells = line.split("\t")
        assert len(cells) == 6
        assert cells[0] == "z1n-rhs"
        assert cells[4] == "pass"
        float(cells[5])


def test_json_lines_roundtrip(tmp_path):
    code, text = run_cli(
        tmp_path, "jl", "--suite", "quad-on", "--nmax", "3", "--format", "json-lines"
    )
    assert code == 0
    rows = [json.loads(line) for line in text.splitlines()]
    assert len(rows) == 6
    assert [r["params"] for r in rows] == [f"n={n}" for n in (-3, -2, -1, 1, 2, 3)]
    for r in rows:
        assert set(r) == {"theorem", "params", "lhs", "rhs", "pass", "ms"}
        assert r["pass"] is True
        assert r["lhs"] == r["rhs"]


def test_deterministic_output(tmp_path):
    _, first = run_cli(tmp_path, "a", "--suite", "quad-on", "--nmax", "4")
    _, second = run_cli(tmp_path, "b", "--suite", "quad-on", "--nmax", "4")
    assert strip_ms(first) == strip_ms(second)


def test_jobs_preserve_order(tmp_path):
    _, serial = run_cli(tmp_path, "s", "--suite", "local-cubic")
    _, parallel = run_cli(tmp_path, "p", "--suite", "local-cubic", "--jobs", "3")
    assert strip_ms(serial) == strip_ms(parallel)


def test_empty_sweep_header_only(tmp_path):
    code, text = run_cli(tmp_path, "empty", "--suite", "quad-on", "--nmax", "0")
    assert code == 0
    assert text == "theorem\tparams\tlhs\trhs\tpass\tms\n"


def test_failure_exit_code(tmp_path, monkeypatch):
    def broken(n):
        return VerificationRecord("quad-on", {"n": n}, 0, 1)

    monkeypatch.setitem(cli._TASK_FUNCS, "quad_on", broken)
    code, text = run_cli(tmp_path, "fail", "--suite", "quad-on", "--nmax", "2")
    assert code == 1
    lines = text.splitlines()
    assert len(lines) == 5
    assert all(line.split("\t")[4] == "FAIL" for line in lines[1:])


def test_cache_dir_flag(tmp_path):
    cache = tmp_path / "cache"
    code, _ = run_cli(
        tmp_path, "c", "--suite", "cubic-on", "--dmax", "3",
        "--cache-dir", str(cache),
    )
    assert code == 0
    assert any(cache.rglob("D*.txt"))


def test_unknown_suite_rejected(tmp_path):
    import pytest

    with pytest.raises(SystemExit):
        cli.main(["--suite", "nope"])
