"""Expression syntax: AST, concrete grammar, printing and normalization.

The grammar (also published in the README):

    expr       := term ("+" term)*
    term       := factor ("." factor)*
    factor     := prefixAct? atom "*"* postfixAct?
    atom       := SYMBOL | "eps" | "nil" | FNNAME "(" expr ("," expr)* ")"
                | "(" expr ")"
    prefixAct  := "{" WEIGHT "}"
    postfixAct := "{" WEIGHT "}"

Symbols are single lowercase letters; uppercase identifiers are registered
functions; ``+`` and ``.`` fold to the right.  ``normalize`` computes the
canonical form used for state identity; every rule preserves the denoted
series in any semiring (sum reordering is sound because series addition is
commutative).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Tuple

from .errors import ArityMismatch, BadWeightLiteral, ParseError, UnknownFunction
from .functions import FnRef, Registry, lookup
from .semirings import (
    Semiring,
    Weight,
    is_one,
    is_zero,
    render,
    sr_mul,
)


class Expr:
    __slots__ = ()

    def __str__(self):
        return pretty(self)


@dataclass(frozen=True)
class Sym(Expr):
    ch: str


@dataclass(frozen=True)
class Epsilon(Expr):
    pass


@dataclass(frozen=True)
class Empty(Expr):
    pass


@dataclass(frozen=True)
class Sum(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Cat(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Star(Expr):
    inner: Expr


@dataclass(frozen=True)
class LAct(Expr):
    weight: Weight
    inner: Expr


@dataclass(frozen=True)
class RAct(Expr):
    inner: Expr
    weight: Weight


@dataclass(frozen=True)
class Apply(Expr):
    fn: FnRef
    args: Tuple[Expr, ...]


EPSILON = Epsilon()
EMPTY = Empty()


# ---------------------------------------------------------------------------
# Structural total order: constructor rank, then lexicographic on children;
# weights compare by their canonical text rendering.

_RANKS = {Empty: 0, Epsilon: 1, Sym: 2, Cat: 3, Star: 4, LAct: 5, RAct: 6, Sum: 7, Apply: 8}


def expr_key(e: Expr):
    t = type(e)
    r = _RANKS[t]
    if t is Sym:
        return (r, e.ch)
    if t in (Empty, Epsilon):
        return (r,)
    if t in (Cat, Sum):
        return (r, expr_key(e.left), expr_key(e.right))
    if t is Star:
        return (r, expr_key(e.inner))
    if t is LAct:
        return (r, render(e.weight), expr_key(e.inner))
    if t is RAct:
        return (r, expr_key(e.inner), render(e.weight))
    return (r, e.fn.name, e.fn.arity, tuple(expr_key(a) for a in e.args))


# ---------------------------------------------------------------------------
# Canonical normalization (series-preserving, applied bottom-up).


def _sum_leaves(e: Expr) -> Iterable[Expr]:
    if isinstance(e, Sum):
        yield from _sum_leaves(e.left)
        yield from _sum_leaves(e.right)
    else:
        yield e


def _rebuild_sum(parts) -> Expr:
    if not parts:
        return EMPTY
    acc = parts[-1]
    for p in reversed(parts[:-1]):
        acc = Sum(p, acc)
    return acc


@functools.lru_cache(maxsize=None)
def _normalize(e: Expr, sr_name: str, idempotent: bool) -> Expr:
    if isinstance(e, (Sym, Epsilon, Empty)):
        return e
    if isinstance(e, Sum):
        parts = []
        for side in (e.left, e.right):
            for leaf in _sum_leaves(_normalize(side, sr_name, idempotent)):
                if not isinstance(leaf, Empty):
                    parts.append(leaf)
        parts.sort(key=expr_key)
        if idempotent:
            parts = [p for i, p in enumerate(parts) if i == 0 or p != parts[i - 1]]
        return _rebuild_sum(parts)
    if isinstance(e, Cat):
        left = _normalize(e.left, sr_name, idempotent)
        right = _normalize(e.right, sr_name, idempotent)
        if isinstance(left, Empty) or isinstance(right, Empty):
            return EMPTY
        if isinstance(left, Epsilon):
            return right
        if isinstance(right, Epsilon):
            return left
        return Cat(left, right)
    if isinstance(e, Star):
        inner = _normalize(e.inner, sr_name, idempotent)
        if isinstance(inner, (Empty, Epsilon)):
            return EPSILON
        return Star(inner)
    if isinstance(e, LAct):
        inner = _normalize(e.inner, sr_name, idempotent)
        k = e.weight
        if isinstance(inner, LAct):
            k, inner = sr_mul(k, inner.weight), inner.inner
        if is_zero(k) or isinstance(inner, Empty):
            return EMPTY
        if is_one(k):
            return inner
        return LAct(k, inner)
    if isinstance(e, RAct):
        inner = _normalize(e.inner, sr_name, idempotent)
        k = e.weight
        if isinstance(inner, RAct):
            k, inner = sr_mul(inner.weight, k), inner.inner
        if is_zero(k) or isinstance(inner, Empty):
            return EMPTY
        if is_one(k):
            return inner
        return RAct(inner, k)
    if isinstance(e, Apply):
        return Apply(e.fn, tuple(_normalize(a, sr_name, idempotent) for a in e.args))
    raise TypeError(f"not an expression: {e!r}")


def normalize(e: Expr, semiring: Semiring) -> Expr:
    """Canonical series-preserving form; idempotent."""
    return _normalize(e, semiring.name, semiring.idempotent_add)


# ---------------------------------------------------------------------------
# Pretty printing with minimal parentheses; parse(pretty(e)) == e.


def pretty(e: Expr) -> str:
    if isinstance(e, Sym):
        return e.ch
    if isinstance(e, Epsilon):
        return "eps"
    if isinstance(e, Empty):
        return "nil"
    if isinstance(e, Sum):
        left = pretty(e.left)
        if isinstance(e.left, Sum):
            left = f"({left})"
        return f"{left}+{pretty(e.right)}"
    if isinstance(e, Cat):
        left = pretty(e.left)
        if isinstance(e.left, (Sum, Cat)):
            left = f"({left})"
        right = pretty(e.right)
        if isinstance(e.right, Sum):
            right = f"({right})"
        return f"{left}.{right}"
    if isinstance(e, Star):
        inner = pretty(e.inner)
        if isinstance(e.inner, (Sum, Cat, LAct, RAct)):
            inner = f"({inner})"
        return f"{inner}*"
    if isinstance(e, LAct):
        inner = pretty(e.inner)
        if isinstance(e.inner, (Sum, Cat, LAct)):
            inner = f"({inner})"
        return f"{{{render(e.weight)}}}{inner}"
    if isinstance(e, RAct):
        inner = pretty(e.inner)
        if isinstance(e.inner, (Sum, Cat, LAct, RAct)):
            inner = f"({inner})"
        return f"{inner}{{{render(e.weight)}}}"
    if isinstance(e, Apply):
        return f"{e.fn.name}({','.join(pretty(a) for a in e.args)})"
    raise TypeError(f"not an expression: {e!r}")


# ---------------------------------------------------------------------------
# Recursive-descent parser.


class _Parser:
    def __init__(self, text: str, semiring: Semiring, registry: Registry):
        self.text = text
        self.at = 0
        self.semiring = semiring
        self.registry = registry

    def error(self, message: str):
        raise ParseError(message, self.at)

    def skip_ws(self):
        while self.at < len(self.text) and self.text[self.at].isspace():
            self.at += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.at] if self.at < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.at += 1

    def parse(self) -> Expr:
        e = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return e

    def expr(self) -> Expr:
        parts = [self.term()]
        while self.peek() == "+":
            self.at += 1
            parts.append(self.term())
        return _fold_right(Sum, parts)

    def term(self) -> Expr:
        parts = [self.factor()]
        while self.peek() == ".":
            self.at += 1
            parts.append(self.factor())
        return _fold_right(Cat, parts)

    def factor(self) -> Expr:
        prefix = self.weight() if self.peek() == "{" else None
        node = self.atom()
        while self.peek() == "*":
            self.at += 1
            node = Star(node)
        if self.peek() == "{":
            node = RAct(node, self.weight())
        if prefix is not None:
            node = LAct(prefix, node)
        return node

    def weight(self) -> Weight:
        self.take("{")
        start = self.at
        end = self.text.find("}", start)
        if end < 0:
            self.error("unterminated weight literal")
        literal = self.text[start:end].strip()
        try:
            w = self.semiring.parse(literal)
        except BadWeightLiteral as exc:
            annotated = BadWeightLiteral(f"{exc} (at position {start})")
            annotated.position = start
            raise annotated from None
        self.at = end + 1
        return w

    def atom(self) -> Expr:
        ch = self.peek()
        if ch == "(":
            self.at += 1
            e = self.expr()
            self.take(")")
            return e
        if ch.islower():
            name = self._scan(str.islower)
            if len(name) == 1:
                return Sym(name)
            if name == "eps":
                return EPSILON
            if name == "nil":
                return EMPTY
            self.error(f"reserved word {name!r} (symbols are single letters)")
        if ch.isupper():
            start = self.at
            name = self._scan(str.isalnum)
            fn = self._lookup(name, start)
            self.take("(")
            args = [self.expr()]
            while self.peek() == ",":
                self.at += 1
                args.append(self.expr())
            self.take(")")
            if len(args) != fn.arity:
                raise ArityMismatch(
                    f"{fn.name} expects {fn.arity} arguments, got {len(args)}"
                )
            return Apply(fn, tuple(args))
        self.error("expected a symbol, 'eps', 'nil', a function or '('")

    def _scan(self, pred) -> str:
        self.skip_ws()
        start = self.at
        while self.at < len(self.text) and pred(self.text[self.at]):
            self.at += 1
        return self.text[start : self.at]

    def _lookup(self, name: str, position: int) -> FnRef:
        try:
            return lookup(self.registry, name)
        except UnknownFunction:
            raise UnknownFunction(f"unknown function {name!r} (at position {position})") from None


def _fold_right(ctor, parts):
    acc = parts[-1]
    for p in reversed(parts[:-1]):
        acc = ctor(p, acc)
    return acc


def parse(text: str, semiring: Semiring, registry: Registry) -> Expr:
    """Parse the concrete syntax into an AST (no normalization applied)."""
    return _Parser(text, semiring, registry).parse()


# ---------------------------------------------------------------------------
# Alphabet helpers.


def infer_alphabet(e: Expr, extra: str = "") -> Tuple[str, ...]:
    """Symbols occurring in ``e``, optionally extended, in sorted order."""
    seen = set(extra)
    stack = [e]
    while stack:
        x = stack.pop()
        if isinstance(x, Sym):
            seen.add(x.ch)
        elif isinstance(x, (Sum, Cat)):
            stack.extend((x.left, x.right))
        elif isinstance(x, Star):
            stack.append(x.inner)
        elif isinstance(x, (LAct, RAct)):
            stack.append(x.inner)
        elif isinstance(x, Apply):
            stack.extend(x.args)
    return tuple(sorted(seen))


def symbol_occurrences(e: Expr) -> int:
    """Number of symbol occurrences (leaf count of ``Sym`` nodes)."""
    if isinstance(e, Sym):
        return 1
    if isinstance(e, (Sum, Cat)):
        return symbol_occurrences(e.left) + symbol_occurrences(e.right)
    if isinstance(e, Star):
        return symbol_occurrences(e.inner)
    if isinstance(e, (LAct, RAct)):
        return symbol_occurrences(e.inner)
    if isinstance(e, Apply):
        return sum(symbol_occurrences(a) for a in e.args)
    return 0
