import pytest
from hypothesis import given

from exprgen import exprs
from seqcircuit.circuit import (
    Circuit,
    CircuitLimitError,
    StartMode,
    StateVector,
    build_circuit,
    compile_pattern,
)
from seqcircuit.positions import Trigger
from seqcircuit.syntax import Letter, mark, parse

GOLDEN_CIRCUIT = [
    "V0 := (1,0,0,0,0,0)",
    "F0 := 0",
    "F1 := (X = a) ∧ (V(0) ∨ V(2) ∨ V(3))",
    "F2 := (X = b) ∧ V(1)",
    "F3 := (X = b) ∧ (V(0) ∨ V(2) ∨ V(3))",
    "F4 := (X = b) ∧ (V(0) ∨ V(2) ∨ V(3))",
    "F5 := (X = a) ∧ V(4)",
    "Y := (X = a) ∧ V(4)",
]


def test_running_example_circuit():
    c = compile_pattern("((a;b)|b)*;b;a")
    lines = c.dump().splitlines()
    assert [l for l in lines if l.startswith(("V0", "F", "Y"))] == GOLDEN_CIRCUIT
    assert c.size == 5 and c.width == 6
    assert c.output_set == {5}
    assert c.initial_valuation.bits == (1, 0, 0, 0, 0, 0)
    assert not c.skippable


def test_single_letter_circuit():
    c = build_circuit(mark(Letter(ord("a"))), StartMode.ANCHORED)
    assert c.size == 1
    assert c.initial_valuation.bits == (1, 0)
    assert c.function_text(1) == "(X = a) ∧ V(0)"
    assert c.output_set == {1}


def test_anywhere_differs_only_in_f0():
    anchored = compile_pattern("(ab|b)*ba", StartMode.ANCHORED)
    anywhere = compile_pattern("(ab|b)*ba", StartMode.ANYWHERE)
    assert anchored.triggers == anywhere.triggers
    assert anchored.output_set == anywhere.output_set
    assert anywhere.function_text(0) == "1"
    a_lines = anchored.dump().splitlines()
    y_lines = anywhere.dump().splitlines()
    diff = [(x, y) for x, y in zip(a_lines, y_lines) if x != y]
    assert diff == [("mode: anchored", "mode: anywhere"), ("F0 := 0", "F0 := 1")]


def test_skippable_output_includes_start_bit():
    c = compile_pattern("a*")
    assert c.skippable
    assert c.output_text() == "(X = a) ∧ (V(0) ∨ V(1)) ∨ F0"
    assert c.accept_mask == 0b11


def test_position_limit():
    with pytest.raises(CircuitLimitError):
        compile_pattern("a" * 11, max_positions=10)
    assert compile_pattern("a" * 10, max_positions=10).size == 10
    assert compile_pattern("a" * 4096).size == 4096
    with pytest.raises(CircuitLimitError):
        compile_pattern("a" * 4097)


def test_malformed_circuit_rejected():
    t = Trigger(2, ord("a"), frozenset({0}))
    with pytest.raises(ValueError):
        Circuit(1, (t,), frozenset({1}), StartMode.ANCHORED, False)
    ok = Trigger(1, ord("a"), frozenset({0}))
    with pytest.raises(ValueError):
        Circuit(1, (ok,), frozenset(), StartMode.ANCHORED, False)


def test_state_vector():
    v = StateVector.from_bits([1, 0, 0, 1])
    assert v.value == 0b1001 and len(v) == 4
    assert v[3] == 1 and v[1] == 0
    assert str(v) == "(1,0,0,1)"
    with pytest.raises(IndexError):
        v[4]


def test_layout_groups_shared_trigger_sets():
    c = compile_pattern("(ab|b)*ba")
    groups = dict(c.layout.groups[ord("b")])
    # b3 and b4 share {0,2,3}; b2 alone has {1}
    assert groups == {0b1101: (1 << 3) | (1 << 4), 0b10: 1 << 2}
    assert c.layout.groups[ord("z")] == ()


@given(exprs(max_letters=12))
def test_linear_size_and_determinism(expr):
    m = mark(expr)
    c1 = build_circuit(m, StartMode.ANCHORED)
    c2 = build_circuit(mark(expr), StartMode.ANCHORED)
    assert c1.width == m.size + 1
    assert c1 == c2
    assert c1.dump() == c2.dump()
    assert c1.initial_valuation.value == 1


def test_letter_rendering():
    c = compile_pattern(r"\*x")
    assert "(X = '*')" in c.dump()
    c = compile_pattern(b"\x00 ")
    assert "(X = \\x00)" in c.dump() and "(X = \\x20)" in c.dump()
