"""Seeded random expression generation for property suites and oracle-check.

Everything is driven by an explicit ``random.Random`` so runs are exactly
reproducible; there is no wall-clock dependence anywhere.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .derivation import is_proper
from .functions import Registry, builtin_registry
from .semirings import Semiring, Weight
from .syntax import (
    Apply,
    Cat,
    EMPTY,
    EPSILON,
    Expr,
    LAct,
    RAct,
    Star,
    Sum,
    Sym,
)


def random_weight(rng: random.Random, semiring: Semiring, small: bool = True) -> Weight:
    if semiring.name == "bool":
        return Weight("bool", rng.random() < 0.7)
    if semiring.name == "nat":
        return Weight("nat", rng.randint(0 if not small else 1, 3))
    if semiring.name == "int":
        return Weight("int", rng.randint(-3, 3) or 1)
    num = rng.randint(-3, 3) or 1
    den = rng.randint(1, 3)
    return Weight("rat", Fraction(num, den))


def random_expr(
    rng: random.Random,
    semiring: Semiring,
    size: int,
    alphabet: str = "ab",
    plain: bool = False,
    registry: Optional[Registry] = None,
) -> Expr:
    """A random expression with at most ``size`` internal nodes; possibly
    improper.  ``plain`` restricts to ordinary regular expressions."""
    fns = [] if plain else list((registry or builtin_registry(semiring)).values())
    return _gen(rng, semiring, size, alphabet, fns, plain)


def _gen(rng, sr, size, alphabet, fns, plain):
    if size <= 1:
        roll = rng.random()
        if roll < 0.82:
            return Sym(rng.choice(alphabet))
        if roll < 0.93:
            return EPSILON
        return EMPTY
    choices = ["sum", "cat", "cat", "star"]
    if not plain:
        choices += ["lact", "ract"]
        if fns:
            choices.append("apply")
    kind = rng.choice(choices)
    if kind == "sum":
        k = rng.randint(1, size - 1)
        return Sum(_gen(rng, sr, k, alphabet, fns, plain), _gen(rng, sr, size - k, alphabet, fns, plain))
    if kind == "cat":
        k = rng.randint(1, size - 1)
        return Cat(_gen(rng, sr, k, alphabet, fns, plain), _gen(rng, sr, size - k, alphabet, fns, plain))
    if kind == "star":
        return Star(_gen(rng, sr, size - 1, alphabet, fns, plain))
    if kind == "lact":
        return LAct(random_weight(rng, sr), _gen(rng, sr, size - 1, alphabet, fns, plain))
    if kind == "ract":
        return RAct(_gen(rng, sr, size - 1, alphabet, fns, plain), random_weight(rng, sr))
    fn = rng.choice(fns)
    share = max(1, (size - 1) // fn.arity)
    return Apply(fn, tuple(_gen(rng, sr, share, alphabet, fns, plain) for _ in range(fn.arity)))


def random_proper_expr(
    rng: random.Random,
    semiring: Semiring,
    size: int,
    alphabet: str = "ab",
    plain: bool = False,
    registry: Optional[Registry] = None,
) -> Expr:
    """Rejection-sample until the expression is proper."""
    while True:
        e = random_expr(rng, semiring, size, alphabet, plain, registry)
        if is_proper(e, semiring):
            return e
