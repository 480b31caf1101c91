"""Nullability, properness, and symbol/word derivatives.

The weight of a word is computed purely syntactically: deriving by every
symbol of the word and then binding nullability over the result.  Improper
expressions (a starred subexpression whose nullability cannot be starred)
are rejected at the API boundary; new carriers produced by derivation are
validated defensively as well.
"""

from __future__ import annotations

import functools
from typing import Optional

from .errors import ImproperExpression
from .semirings import Semiring, Weight, sr_add, sr_mul, sr_star
from .supports import Support, lift_n
from .syntax import (
    Apply,
    Cat,
    Empty,
    Epsilon,
    Expr,
    LAct,
    RAct,
    Star,
    Sum,
    Sym,
)


@functools.lru_cache(maxsize=None)
def _part_null(e: Expr, sr_name: str) -> Optional[Weight]:
    from .semirings import get_semiring

    sr = get_semiring(sr_name)
    if isinstance(e, Epsilon):
        return sr.one
    if isinstance(e, (Empty, Sym)):
        return sr.zero
    if isinstance(e, Sum):
        return lift_n(sr_add, (_part_null(e.left, sr_name), _part_null(e.right, sr_name)))
    if isinstance(e, Cat):
        return lift_n(sr_mul, (_part_null(e.left, sr_name), _part_null(e.right, sr_name)))
    if isinstance(e, Star):
        inner = _part_null(e.inner, sr_name)
        # In a starred semiring this is total; otherwise it is defined only
        # where the inner nullability is zero.
        return None if inner is None else sr_star(inner)
    if isinstance(e, LAct):
        inner = _part_null(e.inner, sr_name)
        return None if inner is None else sr_mul(e.weight, inner)
    if isinstance(e, RAct):
        inner = _part_null(e.inner, sr_name)
        return None if inner is None else sr_mul(inner, e.weight)
    if isinstance(e, Apply):
        return lift_n(
            lambda *ws: e.fn.apply(ws), [_part_null(a, sr_name) for a in e.args]
        )
    raise TypeError(f"not an expression: {e!r}")


def part_null(e: Expr, semiring: Semiring) -> Optional[Weight]:
    """The partial nullability value; ``None`` marks an improper expression."""
    return _part_null(e, semiring.name)


def null(e: Expr, semiring: Semiring) -> Weight:
    """The weight of the empty word, computed syntactically."""
    v = _part_null(e, semiring.name)
    if v is None:
        raise ImproperExpression(f"improper expression: {e}")
    return v


def is_proper(e: Expr, semiring: Semiring) -> bool:
    return _part_null(e, semiring.name) is not None


def ensure_proper(e: Expr, semiring: Semiring) -> None:
    null(e, semiring)


def derive_symbol(support: Support, e: Expr, a: str):
    """The derivative of ``e`` w.r.t. one symbol, as a value of the support."""
    sr = support.semiring
    ensure_proper(e, sr)
    v = _derive(support, e, a)
    for c in support.carriers(v):
        if _part_null(c, sr.name) is None:
            raise ImproperExpression(f"derivative produced an improper carrier: {c}")
    return v


def _derive(support: Support, e: Expr, a: str):
    sr = support.semiring
    if isinstance(e, Sym):
        return support.pure(Epsilon()) if e.ch == a else support.zero()
    if isinstance(e, (Epsilon, Empty)):
        return support.zero()
    if isinstance(e, Sum):
        return support.plus(_derive(support, e.left, a), _derive(support, e.right, a))
    if isinstance(e, Cat):
        return support.plus(
            support.rtimes(_derive(support, e.left, a), e.right),
            support.lact(null(e.left, sr), _derive(support, e.right, a)),
        )
    if isinstance(e, Star):
        return support.rtimes(_derive(support, e.inner, a), e)
    if isinstance(e, LAct):
        return support.lact(e.weight, _derive(support, e.inner, a))
    if isinstance(e, RAct):
        return support.ract(_derive(support, e.inner, a), e.weight)
    if isinstance(e, Apply):
        return support.fapply(e.fn, [_derive(support, x, a) for x in e.args])
    raise TypeError(f"not an expression: {e!r}")


def derive_word(support: Support, e: Expr, word: str):
    """Iterated derivative: identity on the empty word, bind per symbol."""
    ensure_proper(e, support.semiring)
    v = support.pure(e)
    for ch in word:
        v = support.bind(v, lambda c: derive_symbol(support, c, ch))
    return v


def weight(support: Support, e: Expr, word: str) -> Weight:
    """The weight of ``word``: derive by the word, then bind nullability."""
    v = derive_word(support, e, word)
    sr = support.semiring
    return support.weight_of(v, lambda c: null(c, sr))
