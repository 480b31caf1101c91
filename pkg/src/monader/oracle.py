"""Brute-force series semantics, the ground truth for every property test.

``oracle_weight`` computes the weight of a word by structural recursion on
the expression: concatenation sums over every splitting of the word, star
sums over every composition into nonempty factors.  Exponential time is
accepted; a memo on (subterm, word slice) makes repeated queries cheap
without changing any result.
"""

from __future__ import annotations

import os
from typing import Dict, Optional, Tuple

from .derivation import ensure_proper
from .errors import WordTooLong
from .semirings import Semiring, Weight, sr_add, sr_mul
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
    infer_alphabet,
)

DEFAULT_MAX_WORD_LEN = 10

_ENV_BOUND = "MONADER_MAX_ORACLE_LEN"


def max_word_len() -> int:
    raw = os.environ.get(_ENV_BOUND)
    if raw is not None:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_MAX_WORD_LEN


def oracle_weight(
    e: Expr, word: str, semiring: Semiring, bound: Optional[int] = None
) -> Weight:
    """The series value assigned to ``word`` by ``e``."""
    limit = max_word_len() if bound is None else bound
    if len(word) > limit:
        raise WordTooLong(f"|{word}| exceeds the oracle bound {limit}")
    ensure_proper(e, semiring)
    return _weigh(e, word, semiring, {})


def _weigh(e: Expr, w: str, sr: Semiring, memo: Dict) -> Weight:
    key = (e, w)
    hit = memo.get(key)
    if hit is not None:
        return hit
    out = _weigh_raw(e, w, sr, memo)
    memo[key] = out
    return out


def _weigh_raw(e: Expr, w: str, sr: Semiring, memo: Dict) -> Weight:
    if isinstance(e, Epsilon):
        return sr.one if w == "" else sr.zero
    if isinstance(e, Empty):
        return sr.zero
    if isinstance(e, Sym):
        return sr.one if w == e.ch else sr.zero
    if isinstance(e, Sum):
        return sr_add(_weigh(e.left, w, sr, memo), _weigh(e.right, w, sr, memo))
    if isinstance(e, Cat):
        total = sr.zero
        for i in range(len(w) + 1):
            total = sr_add(
                total,
                sr_mul(_weigh(e.left, w[:i], sr, memo), _weigh(e.right, w[i:], sr, memo)),
            )
        return total
    if isinstance(e, Star):
        if w == "":
            return sr.one
        total = sr.zero
        for parts in _compositions(w):
            prod = sr.one
            for u in parts:
                prod = sr_mul(prod, _weigh(e.inner, u, sr, memo))
            total = sr_add(total, prod)
        return total
    if isinstance(e, LAct):
        return sr_mul(e.weight, _weigh(e.inner, w, sr, memo))
    if isinstance(e, RAct):
        return sr_mul(_weigh(e.inner, w, sr, memo), e.weight)
    if isinstance(e, Apply):
        return e.fn.apply([_weigh(a, w, sr, memo) for a in e.args])
    raise TypeError(f"not an expression: {e!r}")


def _compositions(w: str):
    """Every way to cut ``w`` into nonempty consecutive factors."""
    n = len(w)
    for mask in range(1 << (n - 1)):
        parts, start = [], 0
        for i in range(1, n):
            if mask & (1 << (i - 1)):
                parts.append(w[start:i])
                start = i
        parts.append(w[start:])
        yield parts


def all_words(alphabet: Tuple[str, ...], max_len: int):
    """Every word over ``alphabet`` up to ``max_len``, shortest first."""
    frontier = [""]
    yield ""
    for _ in range(max_len):
        frontier = [w + a for w in frontier for a in alphabet]
        yield from frontier


def enumerate_weights(
    e: Expr,
    max_len: int,
    semiring: Semiring,
    alphabet: Optional[Tuple[str, ...]] = None,
) -> Dict[str, Weight]:
    """Oracle weights for every word up to ``max_len`` over the alphabet."""
    limit = max_word_len()
    if max_len > limit:
        raise WordTooLong(f"{max_len} exceeds the oracle bound {limit}")
    ensure_proper(e, semiring)
    sigma = alphabet if alphabet is not None else infer_alphabet(e)
    memo: Dict = {}
    return {w: _weigh(e, w, semiring, memo) for w in all_words(tuple(sigma), max_len)}
