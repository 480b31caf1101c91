"""Registry of n-ary weight functions usable inside expressions.

A function reference carries its evaluator (total on the semiring carrier);
two references are interchangeable when name and arity agree.  Built-ins:

=========  =====  ==================  ==========================
name       arity  semirings           meaning
=========  =====  ==================  ==========================
ExtDist    3      nat, int, rat       max(xs) - min(xs)
Min, Max   2      nat, int, rat       extrema
Mean       2      rat                 (x + y) / 2, exact
Not        1      bool                negation
And, Or    2      bool                conjunction / disjunction
=========  =====  ==================  ==========================
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Sequence

from .errors import ArityMismatch, UnknownFunction
from .semirings import Semiring, Weight, _ops


@dataclass(frozen=True)
class FnRef:
    name: str
    arity: int
    fn: Callable = field(compare=False, repr=False)

    def apply(self, args: Sequence[Weight]) -> Weight:
        if len(args) != self.arity:
            raise ArityMismatch(
                f"{self.name} expects {self.arity} arguments, got {len(args)}"
            )
        first = args[0]
        for a in args[1:]:
            _ops(first, a)
        return Weight(first.semiring, self.fn(*(a.value for a in args)))


Registry = Dict[str, FnRef]


def _ext_dist(x, y, z):
    return max(x, y, z) - min(x, y, z)


def _mean(x, y):
    return (x + y) / Fraction(2)


_NUMERIC = (
    FnRef("ExtDist", 3, _ext_dist),
    FnRef("Min", 2, min),
    FnRef("Max", 2, max),
)

_BOOLEAN = (
    FnRef("Not", 1, lambda x: not x),
    FnRef("And", 2, lambda x, y: x and y),
    FnRef("Or", 2, lambda x, y: x or y),
)


def builtin_registry(semiring: Semiring) -> Registry:
    """The read-only registry of built-in functions for a semiring."""
    if semiring.name == "bool":
        fns = _BOOLEAN
    elif semiring.name == "rat":
        fns = _NUMERIC + (FnRef("Mean", 2, _mean),)
    else:
        fns = _NUMERIC
    return {f.name: f for f in fns}


def lookup(registry: Registry, name: str) -> FnRef:
    try:
        return registry[name]
    except KeyError:
        raise UnknownFunction(f"unknown function {name!r}") from None
