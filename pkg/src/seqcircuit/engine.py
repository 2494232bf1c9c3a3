"""Running circuits over byte input.

The hot loop lives in one of two interchangeable kernels: the compiled
``_ckernel`` when it was built, else ``_pykernel``. Set the environment
variable ``SEQCIRCUIT_KERNEL=python`` to force the fallback.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from typing import Iterable

from . import _pykernel
from .circuit import Circuit, StartMode, StateVector

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None

KERNELS = {"python": _pykernel}
if _ckernel is not None:
    KERNELS["compiled"] = _ckernel


def _default_kernel():
    wanted = os.environ.get("SEQCIRCUIT_KERNEL", "").strip().lower()
    if wanted and wanted != "auto":
        if wanted not in KERNELS:
            raise ImportError(f"SEQCIRCUIT_KERNEL={wanted!r} is not available")
        return KERNELS[wanted]
    return KERNELS.get("compiled", _pykernel)


DEFAULT_KERNEL = _default_kernel()


def get_kernel(name: str | None = None):
    if name is None or name == "auto":
        return DEFAULT_KERNEL
    try:
        return KERNELS[name]
    except KeyError:
        raise ValueError(
            f"unknown kernel {name!r}; available: {', '.join(sorted(KERNELS))}"
        ) from None


class ModeMismatchError(ValueError):
    pass


class MatchMode(enum.Enum):
    FULL = "full"  # whole input must match
    SUFFIX = "suffix"  # some suffix must match (the benchmarked mode)
    ANYWHERE = "anywhere"  # some substring must match

    @property
    def start_mode(self) -> StartMode:
        return StartMode.ANCHORED if self is MatchMode.FULL else StartMode.ANYWHERE


@dataclass(frozen=True)
class MatchResult:
    accepted: bool
    steps: int
    # earliest n with Y_n = 1; n = 0 stands for the empty prefix (skippable)
    first_accept_step: int | None = None


def check_mode(circuit: Circuit, mode: MatchMode) -> MatchMode:
    mode = MatchMode(mode)
    if circuit.start_mode is not mode.start_mode:
        raise ModeMismatchError(
            f"{mode.value} matching needs a circuit built with start mode "
            f"{mode.start_mode.value}, got {circuit.start_mode.value}"
        )
    return mode


def default_mode(circuit: Circuit) -> MatchMode:
    return MatchMode.FULL if circuit.start_mode is StartMode.ANCHORED else MatchMode.SUFFIX


def step(circuit: Circuit, state: StateVector, byte: int) -> tuple[StateVector, bool]:
    """One clock tick evaluated straight from the next-state functions.

    V'(0) is the start-mode constant and V'(i) = (byte == letter(i)) and
    OR_{j in H(i)} V(j). The output is the OR of F_i over the output set,
    plus F_0 when the expression is skippable.

    This is the reference semantics; :func:`run` uses the grouped layout.
    """
    if len(state) != circuit.width:
        raise ValueError(f"state has {len(state)} bits, circuit needs {circuit.width}")
    bits = [circuit.start_bit]
    for t in circuit.triggers:
        fired = t.letter == byte and any(state[j] for j in t.trigger_set)
        bits.append(int(fired))
    out = any(bits[i] for i in circuit.output_set) or (circuit.skippable and bits[0] == 1)
    return StateVector.from_bits(bits), out


class Matcher:
    """Incremental matcher: feed chunks, then read :meth:`result`.

    One matcher owns its state; a circuit may back any number of matchers.
    """

    def __init__(self, circuit: Circuit, mode: MatchMode | None = None, *, kernel=None):
        self.circuit = circuit
        self.mode = check_mode(circuit, mode) if mode is not None else default_mode(circuit)
        self.kernel = kernel if hasattr(kernel, "scan") else get_kernel(kernel)
        self._handle = circuit.handle(self.kernel)
        self._accept = circuit.accept_mask
        self.reset()

    def reset(self):
        self.state = 1  # V0
        self.steps = 0
        self.first_accept_step = 0 if self.circuit.skippable else None

    @property
    def state_vector(self) -> StateVector:
        return StateVector(self.state, self.circuit.width)

    def feed(self, chunk) -> "Matcher":
        if isinstance(chunk, str):
            chunk = chunk.encode("utf-8")
        n = len(chunk)
        if not n:
            return self
        if self.mode is MatchMode.ANYWHERE and self.first_accept_step is not None:
            # latched: the rest of the input cannot change the answer
            self.steps += n
            return self
        track = self.first_accept_step is None
        stop = self.mode is MatchMode.ANYWHERE
        self.state, hit = self.kernel.scan(self._handle, self.state, chunk, track, stop)
        if hit >= 0:
            self.first_accept_step = self.steps + hit + 1
        self.steps += n
        return self

    def result(self) -> MatchResult:
        if self.mode is MatchMode.ANYWHERE:
            accepted = self.first_accept_step is not None
        else:
            accepted = bool(self.state & self._accept)
        return MatchResult(accepted, self.steps, self.first_accept_step)


def run(circuit: Circuit, data, mode: MatchMode | None = None, *, kernel=None) -> MatchResult:
    """Fold the circuit over ``data`` from the initial valuation.

    ``mode`` defaults to FULL for anchored circuits and SUFFIX otherwise.
    Empty input is accepted exactly when the expression is skippable.
    """
    return Matcher(circuit, mode, kernel=kernel).feed(data).result()


def run_streaming(
    circuit: Circuit, chunks: Iterable, mode: MatchMode | None = None, *, kernel=None
) -> MatchResult:
    m = Matcher(circuit, mode, kernel=kernel)
    for chunk in chunks:
        m.feed(chunk)
    return m.result()


def run_file(circuit: Circuit, path, mode=None, *, kernel=None, chunk_size=1 << 20) -> MatchResult:
    m = Matcher(circuit, mode, kernel=kernel)
    with open(path, "rb") as fh:
        while chunk := fh.read(chunk_size):
            m.feed(chunk)
    return m.result()
