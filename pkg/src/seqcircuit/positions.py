"""Skippability, output positions and trigger sets of a marked expression.

Position sets are held as int bitmasks internally (bit ``i`` set means
position ``i`` is a member) and exposed as frozensets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .syntax import (
    Concat,
    Expr,
    Letter,
    MarkedExpr,
    Opt,
    Plus,
    Star,
    Union,
    fold,
    walk,
)


def bits_to_set(mask: int) -> frozenset[int]:
    return frozenset(i for i, c in enumerate(reversed(bin(mask)[2:])) if c == "1")


def set_to_bits(positions: Iterable[int]) -> int:
    mask = 0
    for p in positions:
        mask |= 1 << p
    return mask


def format_set(positions: Iterable[int]) -> str:
    return "{" + ", ".join(str(p) for p in sorted(positions)) + "}"


@dataclass(frozen=True)
class Trigger:
    """Position ``position`` is entered on ``letter`` from any of ``trigger_set``."""

    position: int
    letter: int
    trigger_set: frozenset[int]

    def as_tuple(self) -> tuple[int, int, tuple[int, ...]]:
        return self.position, self.letter, tuple(sorted(self.trigger_set))


@dataclass(frozen=True)
class NodeInfo:
    node: Expr
    depth: int
    eps: bool
    outs: frozenset[int]


def _annotate(expr: Expr) -> dict[int, tuple[bool, int]]:
    """Map ``id(node)`` to ``(eps, outs-mask)`` for every node of ``expr``."""
    table: dict[int, tuple[bool, int]] = {}

    def leaf(node: Letter):
        if node.position <= 0:
            raise ValueError(f"letter {node!r} is not marked")
        r = (False, 1 << node.position)
        table[id(node)] = r
        return r

    def unary(node, inner):
        e, o = inner
        if isinstance(node, (Star, Opt)):
            r = (True, o)
        else:
            r = (e, o)
        table[id(node)] = r
        return r

    def binary(node, left, right):
        (e1, o1), (e2, o2) = left, right
        if isinstance(node, Union):
            r = (e1 or e2, o1 | o2)
        else:
            r = (e1 and e2, (o1 | o2) if e2 else o2)
        table[id(node)] = r
        return r

    fold(expr, leaf, unary, binary)
    return table


def _root(expr: Expr | MarkedExpr) -> Expr:
    return expr.root if isinstance(expr, MarkedExpr) else expr


def eps(expr: Expr | MarkedExpr) -> bool:
    """True when the expression's language contains the empty word."""
    root = _root(expr)
    return _annotate(root)[id(root)][0]


def outs(expr: Expr | MarkedExpr) -> frozenset[int]:
    """Positions at which a match of the expression can end."""
    root = _root(expr)
    return bits_to_set(_annotate(root)[id(root)][1])


def _trigs(root: Expr, incoming: int, table) -> list[tuple[int, int, int]]:
    found = []
    stack = [(root, incoming)]
    while stack:
        node, h = stack.pop()
        if isinstance(node, Letter):
            found.append((node.position, node.symbol, h))
        elif isinstance(node, Union):
            stack.append((node.right, h))
            stack.append((node.left, h))
        elif isinstance(node, Concat):
            e1, o1 = table[id(node.left)]
            stack.append((node.right, (o1 | h) if e1 else o1))
            stack.append((node.left, h))
        elif isinstance(node, (Star, Plus)):
            stack.append((node.inner, table[id(node.inner)][1] | h))
        else:  # Opt
            stack.append((node.inner, h))
    found.sort()
    return found


def trigs(expr: Expr | MarkedExpr, incoming: Iterable[int] = (0,)) -> list[Trigger]:
    """Trigger triples of every letter occurrence, sorted by position.

    ``incoming`` is the set of positions that may precede the expression;
    the whole-expression call uses ``{0}``.
    """
    root = _root(expr)
    table = _annotate(root)
    return [
        Trigger(pos, sym, bits_to_set(h))
        for pos, sym, h in _trigs(root, set_to_bits(incoming), table)
    ]


@dataclass(frozen=True, eq=False)
class Analysis:
    """All three functions evaluated over one marked expression."""

    marked: MarkedExpr
    eps: bool
    outs_mask: int
    # (position, letter, trigger mask), one per position, sorted
    raw_triggers: tuple[tuple[int, int, int], ...]
    _table: dict

    def nodes(self) -> list[NodeInfo]:
        """Per-node annotations in pre-order, root first."""
        out = []
        for node, depth in walk(self.marked.root):
            e, o = self._table[id(node)]
            out.append(NodeInfo(node, depth, e, bits_to_set(o)))
        return out

    @property
    def size(self) -> int:
        return self.marked.size

    @property
    def outs(self) -> frozenset[int]:
        return bits_to_set(self.outs_mask)

    @property
    def triggers(self) -> list[Trigger]:
        return [Trigger(p, a, bits_to_set(h)) for p, a, h in self.raw_triggers]


def analyze(marked: MarkedExpr) -> Analysis:
    """One annotated-tree pass computing eps/outs per node, then trigs(E, {0})."""
    root = marked.root
    table = _annotate(root)
    raw = _trigs(root, 1, table)
    e, o = table[id(root)]
    return Analysis(marked, e, o, tuple(raw), table)


__all__ = [
    "Analysis",
    "NodeInfo",
    "Trigger",
    "analyze",
    "bits_to_set",
    "eps",
    "format_set",
    "outs",
    "set_to_bits",
    "trigs",
]
