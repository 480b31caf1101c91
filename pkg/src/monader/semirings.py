"""Weight semirings and exact weight values.

Four semirings are supported: Boolean, natural numbers, integers and exact
rationals.  All arithmetic is exact (arbitrary-precision integers,
``fractions.Fraction``); no floating point is involved anywhere, so weight
equality is always decidable and safe to use for state identity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .errors import BadWeightLiteral, SemiringMismatch


class Semiring:
    """One of the four concrete weight semirings.

    ``star`` is partial: it returns ``None`` where no solution of
    ``k* = 1 + k * k*`` exists (every nonzero value in the numeric
    semirings).  The Boolean semiring is fully starred.
    """

    def __init__(
        self,
        name: str,
        zero,
        one,
        add: Callable,
        mul: Callable,
        star: Callable,
        parse: Callable[[str], object],
        render: Callable[[object], str],
        idempotent_add: bool,
    ):
        self.name = name
        self._zero = zero
        self._one = one
        self._add = add
        self._mul = mul
        self._star = star
        self._parse = parse
        self._render = render
        self.idempotent_add = idempotent_add

    def __repr__(self):
        return f"Semiring({self.name})"

    def __hash__(self):
        return hash(self.name)

    def __eq__(self, other):
        return isinstance(other, Semiring) and other.name == self.name

    @property
    def zero(self) -> "Weight":
        return Weight(self.name, self._zero)

    @property
    def one(self) -> "Weight":
        return Weight(self.name, self._one)

    def parse(self, text: str) -> "Weight":
        raw = self._parse(text)
        if raw is None:
            raise BadWeightLiteral(f"{text!r} is not a valid {self.name} weight")
        return Weight(self.name, raw)

    def render(self, w: "Weight") -> str:
        return self._render(w.value)


_NAT_RE = re.compile(r"[0-9]+\Z")
_INT_RE = re.compile(r"-?[0-9]+\Z")
_RAT_RE = re.compile(r"(-?[0-9]+)(?:/([1-9][0-9]*))?\Z")


def _parse_bool(text: str):
    if text in ("1", "true"):
        return True
    if text in ("0", "false"):
        return False
    return None


def _parse_nat(text: str):
    return int(text) if _NAT_RE.match(text) else None


def _parse_int(text: str):
    return int(text) if _INT_RE.match(text) else None


def _parse_rat(text: str):
    m = _RAT_RE.match(text)
    if not m:
        return None
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    return Fraction(num, den)


def _render_rat(v: Fraction) -> str:
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def _star_bool(v: bool):
    # false* = 1, true* = 1 + true * true* is solved by true.
    return True


def _star_numeric(v):
    return 1 if v == 0 else None


BOOLEAN = Semiring(
    "bool",
    zero=False,
    one=True,
    add=lambda a, b: a or b,
    mul=lambda a, b: a and b,
    star=_star_bool,
    parse=_parse_bool,
    render=lambda v: "true" if v else "false",
    idempotent_add=True,
)

NAT = Semiring(
    "nat",
    zero=0,
    one=1,
    add=lambda a, b: a + b,
    mul=lambda a, b: a * b,
    star=_star_numeric,
    parse=_parse_nat,
    render=str,
    idempotent_add=False,
)

INT = Semiring(
    "int",
    zero=0,
    one=1,
    add=lambda a, b: a + b,
    mul=lambda a, b: a * b,
    star=_star_numeric,
    parse=_parse_int,
    render=str,
    idempotent_add=False,
)

RAT = Semiring(
    "rat",
    zero=Fraction(0),
    one=Fraction(1),
    add=lambda a, b: a + b,
    mul=lambda a, b: a * b,
    star=lambda v: Fraction(1) if v == 0 else None,
    parse=_parse_rat,
    render=_render_rat,
    idempotent_add=False,
)

SEMIRINGS = {s.name: s for s in (BOOLEAN, NAT, INT, RAT)}


def get_semiring(name: str) -> Semiring:
    try:
        return SEMIRINGS[name]
    except KeyError:
        raise SemiringMismatch(f"unknown semiring {name!r}") from None


@dataclass(frozen=True)
class Weight:
    """An element of one of the four semirings; exact and immutable."""

    semiring: str
    value: object

    def __repr__(self):
        return f"Weight({self.semiring}, {render(self)})"


def _ops(a: Weight, b: Weight) -> Semiring:
    if a.semiring != b.semiring:
        raise SemiringMismatch(f"mixed semirings {a.semiring} and {b.semiring}")
    return SEMIRINGS[a.semiring]


def sr_zero(name: str) -> Weight:
    return get_semiring(name).zero


def sr_one(name: str) -> Weight:
    return get_semiring(name).one


def sr_add(a: Weight, b: Weight) -> Weight:
    s = _ops(a, b)
    return Weight(s.name, s._add(a.value, b.value))


def sr_mul(a: Weight, b: Weight) -> Weight:
    s = _ops(a, b)
    return Weight(s.name, s._mul(a.value, b.value))


def sr_eq(a: Weight, b: Weight) -> bool:
    _ops(a, b)
    return a.value == b.value


def sr_star(a: Weight) -> Optional[Weight]:
    s = SEMIRINGS[a.semiring]
    v = s._star(a.value)
    return None if v is None else Weight(s.name, v)


def render(w: Weight) -> str:
    return SEMIRINGS[w.semiring].render(w)


def is_zero(w: Weight) -> bool:
    return w.value == SEMIRINGS[w.semiring]._zero


def is_one(w: Weight) -> bool:
    return w.value == SEMIRINGS[w.semiring]._one
