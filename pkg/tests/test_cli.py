import json
import subprocess
import sys

import pytest

from seqcircuit.cli import inspect_record, main


def cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_inspect_running_example(capsys):
    code, out, _ = cli(capsys, "inspect", "(ab|b)*ba")
    assert code == 0
    assert "(a₁·b₂ ∪ b₃)*·b₄·a₅" in out
    rows = [line.split(None, 2) for line in out.split("triggers\n")[1].splitlines()[1:6]]
    assert rows == [
        ["1", "a", "{0, 2, 3}"],
        ["2", "b", "{1}"],
        ["3", "b", "{0, 2, 3}"],
        ["4", "b", "{0, 2, 3}"],
        ["5", "a", "{4}"],
    ]
    assert "outputs: {5}" in out
    assert "F5 := (X = a) ∧ V(4)" in out


def test_inspect_single_letter_json(capsys):
    code, out, _ = cli(capsys, "inspect", "a", "--json")
    rec = json.loads(out)
    assert code == 0
    assert rec["triggers"] == [{"position": 1, "letter": "a", "trigger_set": [0]}]
    assert rec["outs"] == [1]


def test_inspect_syntax_error(capsys):
    code, _, err = cli(capsys, "inspect", "(")
    assert code == 1
    assert "offset 1" in err


def test_inspect_record_nodes():
    rec = inspect_record("(ab|b)*ba")
    assert len(rec["nodes"]) == 10
    assert rec["nodes"][0] == {"node": "·", "depth": 0, "eps": False, "outs": [5]}


@pytest.mark.parametrize(
    "pattern,data,mode,want",
    [
        ("(ab|b)*ba", b"xyzzba", "suffix", "1"),
        ("(ab|b)*ba", b"ab", "suffix", "0"),
        ("a", b"", "full", "0"),
        ("a*", b"", "full", "1"),
        ("(ab|b)*ba", b"zbaz", "anywhere", "1"),
        ("(ab|b)*ba", b"zbaz", "suffix", "0"),
    ],
)
def test_match(capsys, tmp_path, pattern, data, mode, want):
    p = tmp_path / "in"
    p.write_bytes(data)
    for extra in ([], ["--kernel", "python"], ["--oracle"]):
        code, out, _ = cli(capsys, "match", pattern, str(p), "--mode", mode, *extra)
        assert (code, out) == (0, want + "\n")


def test_match_missing_file(capsys, tmp_path):
    code, out, err = cli(capsys, "match", "a", str(tmp_path / "nope"))
    assert code == 2 and out == "" and err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["match", "a"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["match", "a", "f", "--mode", "sideways"])
    assert exc.value.code == 1
    capsys.readouterr()


def test_gen_input(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert cli(capsys, "gen-input", "--alphabet", "ab", "--size", "4", "--seed", "9", "--out", str(a))[0] == 0
    cli(capsys, "gen-input", "--alphabet", "ab", "--size", "4", "--seed", "9", "--out", str(b))
    assert a.read_bytes() == b.read_bytes() and len(a.read_bytes()) == 4
    assert set(a.read_bytes()) <= set(b"ab")
    code, _, err = cli(capsys, "gen-input", "--alphabet", "", "--size", "4", "--out", str(a))
    assert code == 1 and "empty" in err
    cli(capsys, "gen-input", "--size", "2KiB", "--out", str(a))
    assert len(a.read_bytes()) == 2048


def test_gen_input_stdout():
    r = subprocess.run(
        [sys.executable, "-m", "seqcircuit", "gen-input", "--alphabet", "xy", "--size", "1K", "--out", "-"],
        capture_output=True,
    )
    assert r.returncode == 0 and len(r.stdout) == 1000 and set(r.stdout) <= set(b"xy")


@pytest.mark.parametrize(
    "argv,want",
    [
        (["optpow", "2"], "(a?)(a?)aa"),
        (["nondet", "1"], "((a|b)*)a(a|b)"),
        (["running"], "(ab|b)*ba"),
        (["chain"], "abcdefghijklmnopqrstuvwxyz"),
        (["prefixed-chain"], "(x|y|z)abcdefghijklmnopqrstuvwxyz"),
    ],
)
def test_gen_pattern(capsys, argv, want):
    assert cli(capsys, "gen-pattern", *argv) == (0, want + "\n", "")


def test_gen_pattern_bad_n(capsys):
    assert cli(capsys, "gen-pattern", "optpow")[0] == 1
    assert cli(capsys, "gen-pattern", "running", "3")[0] == 1


def test_bench_formats(capsys, tmp_path):
    p = tmp_path / "corpus"
    p.write_bytes(b"ab" * 5000)
    code, out, _ = cli(capsys, "bench", "(ab|b)*ba", str(p), "--runs", "3", "--format", "keys")
    assert code == 0
    keys = dict(line.split(": ", 1) for line in out.splitlines())
    assert keys["runs"] == "3" and keys["input_bytes"] == "10000"
    assert len(keys["per_run_elapsed"].split()) == 3
    code, out, _ = cli(capsys, "bench", "(ab|b)*ba", str(p), "--runs", "2", "--format", "json")
    assert json.loads(out)["runs"] == 2
    code, out, _ = cli(capsys, "bench", "(ab|b)*ba", str(p), "--runs", "1")
    assert "throughput" in out and "MB/s" in out
    code, _, _ = cli(capsys, "bench", "a", str(tmp_path / "nope"))
    assert code == 2
    code, _, _ = cli(capsys, "bench", "a", str(p), "--runs", "0")
    assert code == 1


def test_codegen_cmd(capsys, tmp_path):
    code, out, _ = cli(capsys, "codegen", "(ab|b)*ba")
    assert code == 0 and "next_state[0] = 1; // Start anywhere" in out
    dest = tmp_path / "m.c"
    code, _, _ = cli(capsys, "codegen", "a", "--mode", "full", "--backend", "c", "--out", str(dest))
    assert code == 0 and "#include <stdio.h>" in dest.read_text()


def test_position_limit(capsys):
    code, _, err = cli(capsys, "inspect", "a" * 5000)
    assert code == 1 and "limit" in err
