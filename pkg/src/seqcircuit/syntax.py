"""Regular expression syntax: AST, parser, position marking and rendering.

Grammar (highest precedence first)::

    atom    := letter | '\\' meta | '(' union ')'
    postfix := atom ('*' | '+' | '?')*
    concat  := postfix (';'? postfix)*
    union   := concat ('|' concat)*

Letters are raw bytes. ``meta`` is one of ``( ) * + ? | ; \\``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, TypeVar, Union as _U

META = frozenset(b"()*+?|;\\")

T = TypeVar("T")

_SUBSCRIPT = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


class ParseError(ValueError):
    """Malformed pattern. ``offset`` is the 0-based byte offset of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.message = message
        self.offset = offset


@dataclass(frozen=True)
class Letter:
    symbol: int
    position: int = 0  # 0 means unmarked; 0 is never a letter's position

    def __repr__(self):
        s = render_symbol(self.symbol)
        return s + str(self.position).translate(_SUBSCRIPT) if self.position else s


@dataclass(frozen=True)
class Union:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Concat:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Star:
    inner: "Expr"


@dataclass(frozen=True)
class Plus:
    inner: "Expr"


@dataclass(frozen=True)
class Opt:
    inner: "Expr"


Expr = _U[Letter, Union, Concat, Star, Plus, Opt]
BINARY = (Union, Concat)
UNARY = (Star, Plus, Opt)


@dataclass(frozen=True)
class MarkedExpr:
    """An expression whose letters carry positions ``1..size``."""

    root: Expr
    size: int

    def letters(self) -> list[Letter]:
        return list(iter_letters(self.root))


def fold(
    expr: Expr,
    leaf: Callable[[Letter], T],
    unary: Callable[[Expr, T], T],
    binary: Callable[[Expr, T, T], T],
) -> T:
    """Bottom-up fold, iterative so deep concatenation chains are safe.

    Leaves are visited left to right.
    """
    stack: list[tuple[Expr, bool]] = [(expr, False)]
    out: list[T] = []
    while stack:
        node, expanded = stack.pop()
        if isinstance(node, Letter):
            out.append(leaf(node))
        elif expanded:
            if isinstance(node, BINARY):
                right = out.pop()
                out.append(binary(node, out.pop(), right))
            else:
                out.append(unary(node, out.pop()))
        else:
            stack.append((node, True))
            if isinstance(node, BINARY):
                stack.append((node.right, False))
                stack.append((node.left, False))
            else:
                stack.append((node.inner, False))
    return out[0]


def walk(expr: Expr) -> Iterator[tuple[Expr, int]]:
    """Pre-order traversal yielding ``(node, depth)``."""
    stack = [(expr, 0)]
    while stack:
        node, depth = stack.pop()
        yield node, depth
        if isinstance(node, BINARY):
            stack.append((node.right, depth + 1))
            stack.append((node.left, depth + 1))
        elif isinstance(node, UNARY):
            stack.append((node.inner, depth + 1))


def iter_letters(expr: Expr) -> Iterator[Letter]:
    for node, _ in walk(expr):
        if isinstance(node, Letter):
            yield node


def _rebuild_unary(node, inner):
    return type(node)(inner)


def _rebuild_binary(node, left, right):
    return type(node)(left, right)


def mark(expr: Expr) -> MarkedExpr:
    """Number letter occurrences 1..m from left to right."""
    counter = 0

    def leaf(node: Letter) -> Letter:
        nonlocal counter
        counter += 1
        return Letter(node.symbol, counter)

    root = fold(expr, leaf, _rebuild_unary, _rebuild_binary)
    return MarkedExpr(root, counter)


def unmark(expr: Expr) -> Expr:
    return fold(expr, lambda n: Letter(n.symbol), _rebuild_unary, _rebuild_binary)


def _as_bytes(pattern: str | bytes) -> bytes:
    if isinstance(pattern, str):
        return pattern.encode("utf-8")
    return bytes(pattern)


class _Frame:
    __slots__ = ("alts", "seq", "opened")

    def __init__(self, opened: int):
        self.alts: list[Expr] = []
        self.seq: list[Expr] = []
        self.opened = opened

    def concat(self) -> Expr:
        node = self.seq[0]
        for nxt in self.seq[1:]:
            node = Concat(node, nxt)
        return node

    def close(self) -> Expr:
        node = self.alts[0] if self.alts else self.concat()
        if self.alts:
            for alt in self.alts[1:] + [self.concat()]:
                node = Union(node, alt)
        return node


def parse(pattern: str | bytes) -> Expr:
    """Parse pattern text into an AST.

    Concatenation is juxtaposition; ``;`` is accepted as an explicit
    concatenation operator, so ``(((a;b)|b)*);b;a`` and ``((ab|b)*)ba``
    give identical trees. Both operators associate to the left.

    Raises :class:`ParseError` carrying the byte offset of the fault.
    """
    data = _as_bytes(pattern)
    if not data:
        raise ParseError("empty pattern", 0)

    frames = [_Frame(-1)]
    want_operand = False  # set after ';'
    i = 0
    n = len(data)
    while i < n:
        c = data[i]
        top = frames[-1]
        if c == 0x28:  # (
            frames.append(_Frame(i))
            want_operand = False
        elif c == 0x29:  # )
            if len(frames) == 1:
                raise ParseError("unbalanced ')'", i)
            if want_operand:
                raise ParseError("expected operand after ';'", i)
            if not top.seq:
                if top.alts:
                    raise ParseError("expected operand after '|'", i)
                raise ParseError("empty group", i)
            frames.pop()
            frames[-1].seq.append(top.close())
        elif c == 0x7C:  # |
            if want_operand:
                raise ParseError("expected operand after ';'", i)
            if not top.seq:
                raise ParseError("expected operand before '|'", i)
            top.alts.append(top.concat())
            top.seq = []
        elif c == 0x3B:  # ;
            if not top.seq or want_operand:
                raise ParseError("expected operand before ';'", i)
            want_operand = True
        elif c in b"*+?":
            if not top.seq or want_operand:
                raise ParseError(f"nothing to repeat for '{chr(c)}'", i)
            op = Star if c == 0x2A else Plus if c == 0x2B else Opt
            top.seq[-1] = op(top.seq[-1])
        elif c == 0x5C:  # backslash
            if i + 1 >= n:
                raise ParseError("dangling escape", i)
            if data[i + 1] not in META:
                raise ParseError("invalid escape", i)
            i += 1
            top.seq.append(Letter(data[i]))
            want_operand = False
        else:
            top.seq.append(Letter(c))
            want_operand = False
        i += 1

    top = frames[-1]
    if want_operand:
        raise ParseError("expected operand after ';'", n)
    if not top.seq:
        if top.alts:
            raise ParseError("expected operand after '|'", n)
        if len(frames) == 1:
            raise ParseError("empty group", n)
    if len(frames) > 1:
        raise ParseError(f"unclosed '(' opened at offset {top.opened}", n)
    return top.close()


def render_symbol(symbol: int) -> str:
    if symbol in META:
        return "\\" + chr(symbol)
    if 0x21 <= symbol < 0x7F:
        return chr(symbol)
    return f"\\x{symbol:02x}"


def _escape(symbol: int) -> bytes:
    return b"\\" + bytes([symbol]) if symbol in META else bytes([symbol])


# binding strength used by the renderer
_PREC = {Union: 0, Concat: 1, Star: 2, Plus: 2, Opt: 2, Letter: 3}


def render(expr: Expr) -> bytes:
    """Canonical surface text, parenthesised only where needed.

    ``parse(render(e)) == e`` for every unmarked tree ``e``.
    """

    def leaf(node):
        return _escape(node.symbol), 3

    def unary(node, inner):
        text, prec = inner
        if prec < 2:
            text = b"(" + text + b")"
        suffix = b"*" if isinstance(node, Star) else b"+" if isinstance(node, Plus) else b"?"
        return text + suffix, 2

    def binary(node, left, right):
        mine = _PREC[type(node)]
        ltext, lprec = left
        rtext, rprec = right
        # left associative: a right operand of equal strength needs parens
        if lprec < mine:
            ltext = b"(" + ltext + b")"
        if rprec <= mine:
            rtext = b"(" + rtext + b")"
        sep = b"|" if isinstance(node, Union) else b""
        return ltext + sep + rtext, mine

    return fold(expr, leaf, unary, binary)[0]


def render_marked(expr: Expr) -> str:
    """Human-readable marked form, e.g. ``(a₁·b₂ ∪ b₃)*·b₄·a₅``."""

    def leaf(node):
        return repr(node), 3

    def unary(node, inner):
        text, prec = inner
        if prec < 2:
            text = f"({text})"
        return text + {Star: "*", Plus: "+", Opt: "?"}[type(node)], 2

    def binary(node, left, right):
        mine = _PREC[type(node)]
        (ltext, lprec), (rtext, rprec) = left, right
        if lprec < mine:
            ltext = f"({ltext})"
        if rprec <= mine:
            rtext = f"({rtext})"
        sep = " ∪ " if isinstance(node, Union) else "·"
        return ltext + sep + rtext, mine

    return fold(expr, leaf, unary, binary)[0]


def node_label(node: Expr) -> str:
    if isinstance(node, Letter):
        return repr(node)
    return {Union: "∪", Concat: "·", Star: "*", Plus: "+", Opt: "?"}[type(node)]
