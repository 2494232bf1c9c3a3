import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exprgen import exprs, random_expr, random_word
from seqcircuit import (
    KERNELS,
    MatchMode,
    Matcher,
    ModeMismatchError,
    StartMode,
    StateVector,
    build_circuit,
    compile_pattern,
    mark,
    oracle_match,
    parse,
    run,
    run_streaming,
    step,
)
from seqcircuit.engine import get_kernel, run_file

RUNNING = "(ab|b)*ba"


@pytest.fixture(params=sorted(KERNELS))
def kernel(request):
    return request.param


def sv(*bits):
    return StateVector.from_bits(bits)


def test_step_examples():
    c = compile_pattern(RUNNING)
    v, y = step(c, sv(1, 0, 0, 0, 0, 0), ord("b"))
    assert v.bits == (0, 0, 0, 1, 1, 0) and y is False
    v, y = step(c, v, ord("a"))
    assert v.bits == (0, 1, 0, 0, 0, 1) and y is True
    for start in [sv(1, 1, 1, 1, 1, 1), sv(0, 1, 0, 1, 1, 0), sv(1, 0, 0, 0, 0, 0)]:
        v, y = step(c, start, ord("z"))
        assert v.value == 0 and y is False


def test_step_anywhere_keeps_start_bit():
    c = compile_pattern(RUNNING, StartMode.ANYWHERE)
    v, _ = step(c, sv(0, 0, 0, 0, 0, 0), ord("z"))
    assert v.bits == (1, 0, 0, 0, 0, 0)


def test_step_rejects_wrong_width():
    with pytest.raises(ValueError):
        step(compile_pattern(RUNNING), sv(1, 0), ord("a"))


def test_run_examples(kernel):
    c = compile_pattern(RUNNING)
    expr = parse(RUNNING)
    for word, want in [(b"ba", True), (b"ab", False), (b"", False), (b"abba", True)]:
        assert oracle_match(expr, word, MatchMode.FULL) is want
        r = run(c, word, MatchMode.FULL, kernel=kernel)
        assert r.accepted is want
        assert r.steps == len(word)
    anywhere = compile_pattern(RUNNING, StartMode.ANYWHERE)
    assert oracle_match(expr, b"zzzabba", MatchMode.SUFFIX)
    assert run(anywhere, b"zzzabba", MatchMode.SUFFIX, kernel=kernel).accepted


def test_first_accept_step(kernel):
    c = compile_pattern(RUNNING, StartMode.ANYWHERE)
    r = run(c, b"zbazzz", MatchMode.ANYWHERE, kernel=kernel)
    assert r.accepted and r.first_accept_step == 3 and r.steps == 6
    r = run(c, b"zbazzz", MatchMode.SUFFIX, kernel=kernel)
    assert not r.accepted and r.first_accept_step == 3
    r = run(c, b"zzzz", MatchMode.ANYWHERE, kernel=kernel)
    assert not r.accepted and r.first_accept_step is None


def test_empty_input_follows_skippability(kernel):
    for pattern, want in [("a", False), ("a*", True), ("a?b?", True), ("(a|b?)c", False)]:
        for mode in MatchMode:
            c = compile_pattern(pattern, mode.start_mode)
            r = run(c, b"", mode, kernel=kernel)
            assert r.accepted is want, (pattern, mode)
            assert r.first_accept_step == (0 if want else None)


def test_skippable_anywhere_accepts_everything(kernel):
    c = compile_pattern("a*", StartMode.ANYWHERE)
    assert run(c, b"zzz", MatchMode.SUFFIX, kernel=kernel).accepted
    assert run(c, b"zzz", MatchMode.ANYWHERE, kernel=kernel).accepted


def test_mode_mismatch():
    with pytest.raises(ModeMismatchError):
        run(compile_pattern(RUNNING), b"ba", MatchMode.SUFFIX)
    with pytest.raises(ModeMismatchError):
        run(compile_pattern(RUNNING, StartMode.ANYWHERE), b"ba", MatchMode.FULL)


def test_default_modes():
    assert Matcher(compile_pattern(RUNNING)).mode is MatchMode.FULL
    assert Matcher(compile_pattern(RUNNING, StartMode.ANYWHERE)).mode is MatchMode.SUFFIX


def test_unknown_kernel():
    with pytest.raises(ValueError):
        get_kernel("gpu")


def test_streaming_examples(kernel):
    c = compile_pattern(RUNNING)
    whole = run(c, b"ba", kernel=kernel)
    assert run_streaming(c, [b"b", b"a"], kernel=kernel) == whole
    assert run_streaming(c, [b"", b"ba"], kernel=kernel) == whole
    c2 = compile_pattern("(ab)*", StartMode.ANCHORED)
    assert run_streaming(c2, [b"ab"] * 1000, kernel=kernel) == run(c2, b"ab" * 1000, kernel=kernel)
    assert run(c2, b"ab" * 1000, kernel=kernel).accepted


def test_zero_state_is_absorbing_when_anchored(kernel):
    c = compile_pattern(RUNNING)
    m = Matcher(c, kernel=kernel).feed(b"abz")
    assert m.state == 0
    m.feed(b"abba")
    assert m.state == 0 and not m.result().accepted


def test_run_file(tmp_path, kernel):
    p = tmp_path / "in.txt"
    p.write_bytes(b"zz" * 100000 + b"ba")
    c = compile_pattern(RUNNING, StartMode.ANYWHERE)
    r = run_file(c, p, MatchMode.SUFFIX, kernel=kernel, chunk_size=7)
    assert r.accepted and r.steps == 200002


def test_text_input_is_utf8(kernel):
    c = compile_pattern("é")
    assert run(c, "é", kernel=kernel).accepted


def test_wide_states_match_oracle(kernel):
    # more than 64 positions exercises the multi-word kernel path
    rng = random.Random(5)
    pattern = "((a|b)*)a" + "(a|b)" * 40
    for mode in MatchMode:
        c = compile_pattern(pattern, mode.start_mode)
        assert c.width > 64
        pa = None
        for _ in range(30):
            w = bytes(rng.choice(b"ab") for _ in range(rng.randint(35, 60)))
            from seqcircuit import build_oracle

            pa = pa or build_oracle(mark(parse(pattern)))
            assert run(c, w, mode, kernel=kernel).accepted == oracle_match(pa, w, mode)


@settings(max_examples=300, deadline=None)
@given(exprs(max_letters=8), st.binary(max_size=10).map(lambda b: bytes(x % 3 + 97 for x in b)))
def test_engine_matches_oracle(expr, word):
    m = mark(expr)
    for mode in MatchMode:
        c = build_circuit(m, mode.start_mode)
        for k in KERNELS:
            assert run(c, word, mode, kernel=k).accepted == oracle_match(m, word, mode), (mode, k)


@settings(max_examples=200, deadline=None)
@given(exprs(max_letters=8), st.binary(max_size=12).map(lambda b: bytes(x % 2 + 97 for x in b)))
def test_kernels_follow_reference_step(expr, word):
    """Both kernels reproduce the state sequence of the literal F_i evaluation."""
    for start in StartMode:
        c = build_circuit(mark(expr), start)
        v = c.initial_valuation
        matchers = [Matcher(c, kernel=k) for k in KERNELS]
        for b in word:
            v, y = step(c, v, b)
            for mt in matchers:
                mt.feed(bytes([b]))
                assert mt.state == v.value
                assert bool(mt.state & c.accept_mask) == y


@settings(max_examples=200, deadline=None)
@given(
    exprs(max_letters=8),
    st.binary(max_size=30).map(lambda b: bytes(x % 2 + 97 for x in b)),
    st.lists(st.integers(0, 30), max_size=5),
)
def test_streaming_equals_whole(expr, word, cuts):
    cuts = sorted(set(c for c in cuts if c <= len(word)))
    chunks = [word[i:j] for i, j in zip([0] + cuts, cuts + [len(word)])]
    for mode in MatchMode:
        c = build_circuit(mark(expr), mode.start_mode)
        for k in KERNELS:
            assert run_streaming(c, chunks, mode, kernel=k) == run(c, word, mode, kernel=k)


def test_random_trials_against_oracle():
    rng = random.Random(1234)
    for _ in range(500):
        expr = random_expr(rng, 8)
        word = random_word(rng, 10)
        m = mark(expr)
        for mode in MatchMode:
            c = build_circuit(m, mode.start_mode)
            assert run(c, word, mode).accepted == oracle_match(m, word, mode)


@pytest.mark.parametrize("value,want", [("python", "python"), ("auto", None)])
def test_kernel_env_override(value, want):
    import os
    import subprocess
    import sys

    env = dict(os.environ, SEQCIRCUIT_KERNEL=value)
    out = subprocess.run(
        [sys.executable, "-c", "import seqcircuit; print(seqcircuit.KERNEL)"],
        env=env, capture_output=True, text=True, check=True,
    ).stdout.strip()
    assert out == (want or ("compiled" if "compiled" in KERNELS else "python"))
