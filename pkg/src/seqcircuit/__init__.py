"""Regular expressions compiled to sequential circuits.

Each letter occurrence of an expression becomes one state bit. A bit is
switched on by reading its letter while any bit of its trigger set is on,
so matching costs a fixed amount of work per input byte.

>>> from seqcircuit import compile_pattern, run, MatchMode, StartMode
>>> c = compile_pattern("(ab|b)*ba", StartMode.ANYWHERE)
>>> run(c, b"zzzabba", MatchMode.SUFFIX).accepted
True
"""

from .circuit import (
    DEFAULT_MAX_POSITIONS,
    Circuit,
    CircuitLimitError,
    StartMode,
    StateVector,
    build_circuit,
    compile_pattern,
)
from .codegen import GeneratedProgram, UnknownBackendError, emit
from .engine import (
    DEFAULT_KERNEL,
    KERNELS,
    Matcher,
    MatchMode,
    MatchResult,
    ModeMismatchError,
    run,
    run_file,
    run_streaming,
    step,
)
from .oracle import PositionAutomaton, build_oracle, oracle_match
from .positions import Trigger, analyze, eps, outs, trigs
from .syntax import (
    Concat,
    Expr,
    Letter,
    MarkedExpr,
    Opt,
    ParseError,
    Plus,
    Star,
    Union,
    mark,
    parse,
    render,
)

KERNEL = DEFAULT_KERNEL.NAME

__all__ = [
    "Circuit", "CircuitLimitError", "Concat", "DEFAULT_MAX_POSITIONS", "Expr",
    "GeneratedProgram", "KERNEL", "KERNELS", "Letter", "MarkedExpr", "MatchMode",
    "MatchResult", "Matcher", "ModeMismatchError", "Opt", "ParseError", "Plus",
    "PositionAutomaton", "StartMode", "Star", "StateVector", "Trigger", "Union",
    "UnknownBackendError", "analyze", "build_circuit", "build_oracle",
    "compile_pattern", "emit", "eps", "mark", "oracle_match", "outs", "parse",
    "render", "run", "run_file", "run_streaming", "step", "trigs",
]
