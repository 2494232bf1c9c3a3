"""Reference matcher built the classical forward way.

Computes nullable/first/last/follow over the marked tree and simulates the
resulting position automaton by sets of active positions. It shares nothing
with the trigger-set code except the AST, so the two can check each other.
Speed is not a goal.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import MatchMode
from .syntax import Concat, Expr, Letter, MarkedExpr, Opt, Plus, Star, Union, mark


@dataclass(frozen=True)
class PositionAutomaton:
    size: int
    letter: dict[int, int]  # position -> byte
    first: frozenset[int]
    last: frozenset[int]
    follow: dict[int, frozenset[int]]  # 0 maps to first
    nullable: bool

    @property
    def final(self) -> frozenset[int]:
        return self.last | {0} if self.nullable else self.last

    def start(self) -> frozenset[int]:
        return frozenset({0})

    def advance(self, active: frozenset[int], byte: int) -> frozenset[int]:
        return frozenset(
            i for j in active for i in self.follow[j] if self.letter[i] == byte
        )

    def accepts(self, active: frozenset[int]) -> bool:
        return not active.isdisjoint(self.final)

    def matches(self, word: bytes) -> bool:
        active = self.start()
        for b in word:
            active = self.advance(active, b)
            if not active:
                return False
        return self.accepts(active)


def _analyse(node: Expr, letter, follow):
    """Return (nullable, first, last) of ``node``, filling ``follow``."""
    if isinstance(node, Letter):
        p = node.position
        letter[p] = node.symbol
        follow.setdefault(p, set())
        return False, {p}, {p}
    if isinstance(node, Union):
        n1, f1, l1 = _analyse(node.left, letter, follow)
        n2, f2, l2 = _analyse(node.right, letter, follow)
        return n1 or n2, f1 | f2, l1 | l2
    if isinstance(node, Concat):
        n1, f1, l1 = _analyse(node.left, letter, follow)
        n2, f2, l2 = _analyse(node.right, letter, follow)
        for p in l1:
            follow[p] |= f2
        return (
            n1 and n2,
            f1 | f2 if n1 else f1,
            l1 | l2 if n2 else l2,
        )
    n, f, l = _analyse(node.inner, letter, follow)
    if isinstance(node, (Star, Plus)):
        for p in l:
            follow[p] |= f
    if isinstance(node, Plus):
        return n, f, l
    assert isinstance(node, (Star, Opt))
    return True, f, l


def build_oracle(expr: MarkedExpr | Expr) -> PositionAutomaton:
    marked = expr if isinstance(expr, MarkedExpr) else mark(expr)
    letter: dict[int, int] = {}
    follow: dict[int, set[int]] = {}
    nullable, first, last = _analyse(marked.root, letter, follow)
    frozen = {p: frozenset(s) for p, s in follow.items()}
    frozen[0] = frozenset(first)
    return PositionAutomaton(
        marked.size, letter, frozenset(first), frozenset(last), frozen, nullable
    )


def oracle_match(expr: MarkedExpr | Expr | PositionAutomaton, word, mode=MatchMode.FULL) -> bool:
    """Brute-force acceptance: FULL, any suffix, or any substring."""
    pa = expr if isinstance(expr, PositionAutomaton) else build_oracle(expr)
    if isinstance(word, str):
        word = word.encode("utf-8")
    word = bytes(word)
    mode = MatchMode(mode)
    n = len(word)
    if mode is MatchMode.FULL:
        return pa.matches(word)
    if mode is MatchMode.SUFFIX:
        return any(pa.matches(word[k:]) for k in range(n + 1))
    return any(pa.matches(word[i:j]) for i in range(n + 1) for j in range(i, n + 1))
