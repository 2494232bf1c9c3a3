"""Sequential circuits built from marked expressions.

A circuit over positions ``0..m`` has one state bit per position. Bit 0 is
the start bit; bit ``i >= 1`` is set after reading letter ``a`` exactly when
``a`` is the letter at ``i`` and some bit of the trigger set of ``i`` was set
before the read.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .positions import Trigger, analyze, bits_to_set, format_set, set_to_bits
from .syntax import Expr, MarkedExpr, mark, parse

DEFAULT_MAX_POSITIONS = 4096


class CircuitLimitError(ValueError):
    pass


class StartMode(enum.Enum):
    ANCHORED = "anchored"  # F0 := 0
    ANYWHERE = "anywhere"  # F0 := 1


@dataclass(frozen=True)
class StateVector:
    """Valuation of the ``width`` state bits; bit ``i`` of ``value`` is V(i)."""

    value: int
    width: int

    @classmethod
    def from_bits(cls, bits: Sequence[int | bool]) -> "StateVector":
        return cls(set_to_bits(i for i, b in enumerate(bits) if b), len(bits))

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> i) & 1 for i in range(self.width))

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.width:
            raise IndexError(i)
        return (self.value >> i) & 1

    def __len__(self):
        return self.width

    def __str__(self):
        return "(" + ",".join(map(str, self.bits)) + ")"


@dataclass(frozen=True)
class Layout:
    """Triggers regrouped for the matching kernels.

    ``groups[b]`` lists ``(trigger_mask, position_bits)`` pairs for byte ``b``;
    positions sharing both letter and trigger set share one pair.
    """

    width: int
    start_bit: int
    accept_mask: int
    groups: tuple[tuple[tuple[int, int], ...], ...]


def show_letter(symbol: int) -> str:
    c = chr(symbol)
    if c.isascii() and c.isalnum():
        return c
    if 0x21 <= symbol < 0x7F:
        return repr(c)
    return f"\\x{symbol:02x}"


@dataclass(frozen=True, eq=False)
class Circuit:
    size: int
    triggers: tuple[Trigger, ...]
    output_set: frozenset[int]
    start_mode: StartMode
    skippable: bool
    source: bytes | None = field(default=None, compare=False)

    def __post_init__(self):
        positions = [t.position for t in self.triggers]
        if positions != list(range(1, self.size + 1)):
            raise ValueError("triggers must cover positions 1..m exactly once")
        if not self.output_set or not self.output_set <= set(positions):
            raise ValueError("output set must be a non-empty subset of 1..m")

    def __eq__(self, other):
        if not isinstance(other, Circuit):
            return NotImplemented
        return (
            self.size == other.size
            and self.triggers == other.triggers
            and self.output_set == other.output_set
            and self.start_mode == other.start_mode
            and self.skippable == other.skippable
        )

    __hash__ = None

    @property
    def width(self) -> int:
        """Number of state bits, m + 1."""
        return self.size + 1

    @property
    def initial_valuation(self) -> StateVector:
        return StateVector(1, self.width)

    @property
    def start_bit(self) -> int:
        return 1 if self.start_mode is StartMode.ANYWHERE else 0

    @property
    def accept_mask(self) -> int:
        # bit 0 counts as an output position for skippable expressions
        return set_to_bits(self.output_set) | (1 if self.skippable else 0)

    def trigger(self, position: int) -> Trigger:
        return self.triggers[position - 1]

    @cached_property
    def layout(self) -> Layout:
        by_letter: dict[int, dict[int, int]] = {}
        for t in self.triggers:
            mask = set_to_bits(t.trigger_set)
            slot = by_letter.setdefault(t.letter, {})
            slot[mask] = slot.get(mask, 0) | (1 << t.position)
        groups = [()] * 256
        for letter, slot in by_letter.items():
            groups[letter] = tuple(slot.items())
        return Layout(self.width, self.start_bit, self.accept_mask, tuple(groups))

    @cached_property
    def _handles(self) -> dict:
        return {}

    def handle(self, kernel):
        """Kernel-specific prepared form of :attr:`layout`, cached per kernel."""
        h = self._handles.get(kernel.NAME)
        if h is None:
            h = self._handles[kernel.NAME] = kernel.prepare(self.layout)
        return h

    def function_text(self, position: int) -> str:
        """F_i in the ``(X = a) ∧ (V(j) ∨ ...)`` notation."""
        if position == 0:
            return str(self.start_bit)
        t = self.trigger(position)
        terms = [f"V({j})" for j in sorted(t.trigger_set)]
        body = terms[0] if len(terms) == 1 else "(" + " ∨ ".join(terms) + ")"
        return f"(X = {show_letter(t.letter)}) ∧ {body}"

    def output_text(self) -> str:
        parts = [self.function_text(i) for i in sorted(self.output_set)]
        if len(parts) > 1:
            parts = [f"({p})" for p in parts]
        if self.skippable:
            parts.append("F0")
        return " ∨ ".join(parts)

    def dump(self) -> str:
        """Structured text: header keys, V0, one line per F_i, then Y."""
        lines = []
        if self.source is not None:
            lines.append(f"pattern: {self.source.decode('utf-8', 'backslashreplace')}")
        lines += [
            f"m: {self.size}",
            f"mode: {self.start_mode.value}",
            f"skippable: {int(self.skippable)}",
            f"outputs: {format_set(self.output_set)}",
            f"V0 := {self.initial_valuation}",
        ]
        lines += [f"F{i} := {self.function_text(i)}" for i in range(self.width)]
        lines.append(f"Y := {self.output_text()}")
        return "\n".join(lines) + "\n"


def build_circuit(
    expr: MarkedExpr | Expr,
    mode: StartMode = StartMode.ANCHORED,
    *,
    max_positions: int = DEFAULT_MAX_POSITIONS,
    source: bytes | None = None,
) -> Circuit:
    """Assemble the circuit for ``expr`` under the given start mode.

    An unmarked expression is marked first. Raises :class:`CircuitLimitError`
    when the expression has more than ``max_positions`` letter occurrences.
    """
    marked = expr if isinstance(expr, MarkedExpr) else mark(expr)
    if marked.size > max_positions:
        raise CircuitLimitError(
            f"expression has {marked.size} positions, limit is {max_positions}"
        )
    a = analyze(marked)
    triggers = tuple(Trigger(p, sym, bits_to_set(h)) for p, sym, h in a.raw_triggers)
    return Circuit(marked.size, triggers, a.outs, StartMode(mode), a.eps, source)


def compile_pattern(
    pattern: str | bytes,
    mode: StartMode = StartMode.ANCHORED,
    *,
    max_positions: int = DEFAULT_MAX_POSITIONS,
) -> Circuit:
    source = pattern.encode("utf-8") if isinstance(pattern, str) else bytes(pattern)
    return build_circuit(
        parse(source), mode, max_positions=max_positions, source=source
    )

