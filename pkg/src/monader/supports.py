"""The four interchangeable supports for derivative computation.

A support packages a monad over expression carriers (``pure``/``bind``/
``fmap``) with the operations derivatives need: a monoid ``plus``/``zero``,
the right action ``rtimes`` appending an expression, scalar actions ``lact``
and ``ract``, function application ``fapply``, and a flattening ``to_exp``
back to a single expression.

Values are carrier-polymorphic: carriers are expressions during derivation,
the unit token when computing weights, and state indices inside automata.
The active :class:`CarrierDomain` supplies carrier normalization, the
zero-carrier test and the canonical ordering.

Concrete values:

* maybe    -- ``None`` or a single carrier (Boolean weights)
* set      -- ``frozenset`` of carriers (Boolean weights)
* lincomb  -- :class:`LinComb`, a canonical coefficient map
* gradcomb -- :class:`Graded`, an operad term with one linear combination
              per argument slot
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from .errors import ArityMismatch, SupportMismatch
from .functions import FnRef
from .operads import (
    ID,
    OpComp,
    OpId,
    OpPrim,
    OpProd,
    OpScaleL,
    OpScaleR,
    OpSum,
    OperadTerm,
    op_arity,
    op_compose,
    op_eval,
    scale_left,
    scale_right,
)
from .semirings import (
    Semiring,
    Weight,
    get_semiring,
    is_one,
    is_zero,
    sr_add,
    sr_mul,
)
from .syntax import (
    Apply,
    Cat,
    EMPTY,
    Empty,
    Expr,
    LAct,
    RAct,
    Sum,
    expr_key,
    normalize,
)

SUPPORT_NAMES = ("maybe", "set", "lincomb", "gradcomb")


class Unit:
    """The one-element carrier used for weight-level values."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNIT"


UNIT = Unit()


def lift_n(f: Callable, items: Sequence[Optional[object]]) -> Optional[object]:
    """Apply ``f`` pointwise; any absent input poisons the result."""
    if any(x is None for x in items):
        return None
    return f(*items)


# ---------------------------------------------------------------------------
# Carrier domains.


class CarrierDomain:
    def canon(self, c):
        return c

    def is_zero(self, c) -> bool:
        return False

    def key(self, c):
        return c


class ExprDomain(CarrierDomain):
    def __init__(self, semiring: Semiring):
        self.semiring = semiring

    def canon(self, c):
        return normalize(c, self.semiring)

    def is_zero(self, c) -> bool:
        return isinstance(c, Empty)

    def key(self, c):
        return expr_key(c)


class UnitDomain(CarrierDomain):
    def key(self, c):
        return 0


class IndexDomain(CarrierDomain):
    pass


# ---------------------------------------------------------------------------
# Linear combinations and graded terms.


class LinComb:
    """Finite formal sum of (carrier, coefficient) pairs, like terms merged,
    zero coefficients and zero carriers dropped, carriers in canonical order."""

    __slots__ = ("items",)

    def __init__(self, items: Tuple[Tuple[object, Weight], ...]):
        object.__setattr__(self, "items", items)

    def __setattr__(self, name, value):
        raise AttributeError("LinComb is immutable")

    def __eq__(self, other):
        return isinstance(other, LinComb) and other.items == self.items

    def __hash__(self):
        return hash(self.items)

    def __repr__(self):
        body = ", ".join(f"{c!r}: {k!r}" for c, k in self.items)
        return f"LinComb({{{body}}})"

    def __len__(self):
        return len(self.items)


@dataclass(frozen=True)
class Graded:
    """An operad term applied to one linear combination per argument slot."""

    op: OperadTerm
    slots: Tuple[LinComb, ...]


# ---------------------------------------------------------------------------
# Supports.


class Support:
    name: str

    def __init__(self, semiring: Semiring, domain: CarrierDomain | None = None):
        self.semiring = semiring
        self.domain = domain if domain is not None else ExprDomain(semiring)

    def with_domain(self, domain: CarrierDomain) -> "Support":
        return type(self)(self.semiring, domain)

    # Shared helpers ------------------------------------------------------

    def lincomb(self, pairs: Iterable[Tuple[object, Weight]]) -> LinComb:
        dom = self.domain
        acc = {}
        for c, k in pairs:
            c = dom.canon(c)
            if dom.is_zero(c) or is_zero(k):
                continue
            prev = acc.get(c)
            total = k if prev is None else sr_add(prev, k)
            if is_zero(total):
                acc.pop(c, None)
            else:
                acc[c] = total
        ordered = sorted(acc.items(), key=lambda item: dom.key(item[0]))
        return LinComb(tuple(ordered))

    def _apply_exprs(self, fn: FnRef, vs: Sequence) -> Expr:
        if len(vs) != fn.arity:
            raise ArityMismatch(f"{fn.name} expects {fn.arity} arguments, got {len(vs)}")
        return Apply(fn, tuple(self.to_exp(v) for v in vs))

    # Interface ------------------------------------------------------------

    def pure(self, c):
        raise NotImplementedError

    def bind(self, v, f):
        raise NotImplementedError

    def fmap(self, v, g):
        return self.bind(v, lambda c: self.pure(g(c)))

    def zero(self):
        raise NotImplementedError

    def plus(self, v, w):
        raise NotImplementedError

    def rtimes(self, v, expr: Expr):
        """Append ``expr`` on the right of the denoted expression."""
        return self.fmap(v, lambda c: Cat(c, expr))

    def lact(self, k: Weight, v):
        raise NotImplementedError

    def ract(self, v, k: Weight):
        raise NotImplementedError

    def fapply(self, fn: FnRef, vs: Sequence):
        raise NotImplementedError

    def to_exp(self, v) -> Expr:
        raise NotImplementedError

    def weight_value(self, v) -> Weight:
        """Render a weight-level value (carrier ``UNIT``) as a plain weight."""
        raise NotImplementedError

    def unit_weight(self, k: Weight):
        """Embed a plain weight as a weight-level value."""
        raise NotImplementedError

    def carriers(self, v) -> List:
        """Distinct carriers in the value's canonical order."""
        raise NotImplementedError

    def map_carriers(self, v, h, domain: CarrierDomain):
        """Relabel carriers through the injective map ``h``."""
        raise NotImplementedError

    def equal(self, v, w) -> bool:
        return v == w

    def weight_of(self, v, g: Callable[[object], Weight]) -> Weight:
        """``v >>= g`` rendered as a plain weight."""
        unit = self.with_domain(UnitDomain())
        return unit.weight_value(unit.bind(v, lambda c: unit.unit_weight(g(c))))


class MaybeSupport(Support):
    """Optional expression; derivation specializes to the classical
    single-expression derivatives."""

    name = "maybe"

    def pure(self, c):
        c = self.domain.canon(c)
        return None if self.domain.is_zero(c) else c

    def bind(self, v, f):
        return None if v is None else f(v)

    def zero(self):
        return None

    def plus(self, v, w):
        if v is None:
            return w
        if w is None:
            return v
        return self.pure(Sum(v, w))

    def lact(self, k: Weight, v):
        return None if is_zero(k) else v

    def ract(self, v, k: Weight):
        return None if is_zero(k) else v

    def fapply(self, fn: FnRef, vs: Sequence):
        return self.pure(self._apply_exprs(fn, vs))

    def to_exp(self, v) -> Expr:
        return EMPTY if v is None else v

    def weight_value(self, v) -> Weight:
        return self.semiring.zero if v is None else self.semiring.one

    def unit_weight(self, k: Weight):
        return None if is_zero(k) else UNIT

    def carriers(self, v):
        return [] if v is None else [v]

    def map_carriers(self, v, h, domain):
        return None if v is None else h(v)


class SetSupport(Support):
    """Finite expression set; derivation specializes to partial derivatives."""

    name = "set"

    def pure(self, c):
        c = self.domain.canon(c)
        return frozenset() if self.domain.is_zero(c) else frozenset((c,))

    def bind(self, v, f):
        out = frozenset()
        for c in v:
            out |= f(c)
        return out

    def zero(self):
        return frozenset()

    def plus(self, v, w):
        return v | w

    def lact(self, k: Weight, v):
        return self.zero() if is_zero(k) else v

    def ract(self, v, k: Weight):
        return self.zero() if is_zero(k) else v

    def fapply(self, fn: FnRef, vs: Sequence):
        return self.pure(self._apply_exprs(fn, vs))

    def to_exp(self, v) -> Expr:
        parts = self.carriers(v)
        if not parts:
            return EMPTY
        acc = parts[-1]
        for p in reversed(parts[:-1]):
            acc = Sum(p, acc)
        return self.domain.canon(acc) if isinstance(self.domain, ExprDomain) else acc

    def weight_value(self, v) -> Weight:
        return self.semiring.one if v else self.semiring.zero

    def unit_weight(self, k: Weight):
        return frozenset() if is_zero(k) else frozenset((UNIT,))

    def carriers(self, v):
        return sorted(v, key=self.domain.key)

    def map_carriers(self, v, h, domain):
        return frozenset(h(c) for c in v)


class LinCombSupport(Support):
    """Linear combinations of expressions; derivation specializes to the
    weighted derivatives over the active semiring."""

    name = "lincomb"

    def pure(self, c):
        return self.lincomb([(c, self.semiring.one)])

    def bind(self, v: LinComb, f):
        pairs = []
        for c, k in v.items:
            for c2, k2 in f(c).items:
                pairs.append((c2, sr_mul(k, k2)))
        return self.lincomb(pairs)

    def zero(self):
        return LinComb(())

    def plus(self, v: LinComb, w: LinComb):
        return self.lincomb(tuple(v.items) + tuple(w.items))

    def lact(self, k: Weight, v: LinComb):
        return self.lincomb([(c, sr_mul(k, k2)) for c, k2 in v.items])

    def ract(self, v: LinComb, k: Weight):
        # The right action attaches to the carriers, keeping coefficients a
        # left module: (c, k') |-> (c (.) k, k').
        return self.lincomb([(RAct(c, k), k2) for c, k2 in v.items])

    def fapply(self, fn: FnRef, vs: Sequence):
        return self.pure(self._apply_exprs(fn, vs))

    def to_exp(self, v: LinComb) -> Expr:
        parts = []
        for c, k in v.items:
            parts.append(c if is_one(k) else LAct(k, c))
        if not parts:
            return EMPTY
        acc = parts[-1]
        for p in reversed(parts[:-1]):
            acc = Sum(p, acc)
        return self.domain.canon(acc) if isinstance(self.domain, ExprDomain) else acc

    def weight_value(self, v: LinComb) -> Weight:
        total = self.semiring.zero
        for _, k in v.items:
            total = sr_add(total, k)
        return total

    def unit_weight(self, k: Weight):
        return LinComb(()) if is_zero(k) else LinComb(((UNIT, k),))

    def carriers(self, v: LinComb):
        return [c for c, _ in v.items]

    def map_carriers(self, v: LinComb, h, domain):
        relabeled = type(self)(self.semiring, domain)
        return relabeled.lincomb([(h(c), k) for c, k in v.items])


class GradCombSupport(Support):
    """Graded terms: an operad element over one linear combination per slot.

    Every operation re-canonicalizes: coefficients are absorbed into the
    operad, vanished slots are eliminated through ``OpSum(0)``, and equal
    carriers directly governed by the same sum node are merged, which is what
    keeps derivated-term sets finite where plain linear combinations diverge.
    """

    name = "gradcomb"

    def pure(self, c):
        return self._canon(ID, (self.lincomb([(c, self.semiring.one)]),))

    def bind(self, v: Graded, f):
        op, carriers = self.alpha(v)
        results = [f(c) for c in carriers]
        slots = []
        for r in results:
            slots.extend(r.slots)
        return self._canon(op_compose(op, [r.op for r in results]), tuple(slots))

    def zero(self):
        return Graded(OpSum(0), ())

    def plus(self, v: Graded, w: Graded):
        return self._canon(
            op_compose(OpSum(2), [v.op, w.op]), tuple(v.slots) + tuple(w.slots)
        )

    def rtimes(self, v: Graded, expr: Expr):
        return self.pure(Cat(self.to_exp(v), expr))

    def lact(self, k: Weight, v: Graded):
        if is_zero(k):
            return self.zero()
        return self._canon(op_compose(scale_left(k), [v.op]), v.slots)

    def ract(self, v: Graded, k: Weight):
        if is_zero(k):
            return self.zero()
        return self._canon(op_compose(scale_right(k), [v.op]), v.slots)

    def fapply(self, fn: FnRef, vs: Sequence):
        if len(vs) != fn.arity:
            raise ArityMismatch(f"{fn.name} expects {fn.arity} arguments, got {len(vs)}")
        slots = []
        for v in vs:
            slots.extend(v.slots)
        return self._canon(op_compose(OpPrim(fn), [v.op for v in vs]), tuple(slots))

    def to_op(self, lc: LinComb) -> Tuple[OperadTerm, Tuple[object, ...]]:
        """A linear combination as an operadic combination:
        ``k1 (x) c1 + ... + kn (x) cn`` becomes ``Sum_n o (k1 x, ..., kn x)``."""
        if not lc.items:
            return OpSum(0), ()
        children = [scale_left(k) for _, k in lc.items]
        carriers = tuple(c for c, _ in lc.items)
        return op_compose(OpSum(len(children)), children), carriers

    def alpha(self, v: Graded) -> Tuple[OperadTerm, Tuple[object, ...]]:
        """Flatten slot combinations into the operad, exposing raw carriers."""
        ops, carriers = [], []
        for lc in v.slots:
            o, cs = self.to_op(lc)
            ops.append(o)
            carriers.extend(cs)
        return op_compose(v.op, ops), tuple(carriers)

    def _canon(self, op: OperadTerm, slots: Tuple[LinComb, ...]) -> Graded:
        op, carriers = self.alpha(Graded(op, slots))
        while True:
            op2, carriers2 = _merge_slots(op, list(carriers), self.semiring)
            if op2 == op and tuple(carriers2) == tuple(carriers):
                break
            op, carriers = op2, tuple(carriers2)
        one = self.semiring.one
        return Graded(op, tuple(LinComb(((c, one),)) for c in carriers))

    def to_exp(self, v: Graded) -> Expr:
        op, carriers = self.alpha(v)
        it = iter(carriers)
        expr = _op_to_expr(op, it)
        return self.domain.canon(expr) if isinstance(self.domain, ExprDomain) else expr

    def weight_value(self, v: Graded) -> Weight:
        sums = []
        for lc in v.slots:
            total = self.semiring.zero
            for _, k in lc.items:
                total = sr_add(total, k)
            sums.append(total)
        return op_eval(v.op, sums, self.semiring)

    def unit_weight(self, k: Weight):
        if is_zero(k):
            return self.zero()
        return self._canon(ID, (LinComb(((UNIT, k),)),))

    def carriers(self, v: Graded):
        seen, out = set(), []
        for lc in v.slots:
            for c, _ in lc.items:
                if c not in seen:
                    seen.add(c)
                    out.append(c)
        return out

    def map_carriers(self, v: Graded, h, domain):
        relabeled = type(self)(self.semiring, domain)
        slots = tuple(
            relabeled.lincomb([(h(c), k) for c, k in lc.items]) for lc in v.slots
        )
        return Graded(v.op, slots)

    def equal(self, v: Graded, w: Graded) -> bool:
        # Graded terms are equal when their flattened expressions agree.
        if not isinstance(self.domain, ExprDomain):
            return v == w
        return self.to_exp(v) == self.to_exp(w)


def _merge_slots(op: OperadTerm, carriers: List, semiring: Semiring):
    """Merge equal carriers directly governed by one sum node.

    Children of a sum that are ``OpId`` or ``OpScaleL`` each govern exactly
    one carrier; two such children over the same carrier combine into a
    single ``OpScaleL`` with added coefficients at the first position.
    """
    if isinstance(op, OpSum) and op.n >= 2:
        return _merge_sum([ID] * op.n, carriers, semiring)
    if isinstance(op, OpComp):
        new_children, new_carriers, at = [], [], 0
        for child in op.children:
            n = op_arity(child)
            c2, cs2 = _merge_slots(child, carriers[at : at + n], semiring)
            at += n
            new_children.append(c2)
            new_carriers.extend(cs2)
        if isinstance(op.head, OpSum):
            return _merge_sum(new_children, new_carriers, semiring)
        return op_compose(op.head, new_children), new_carriers
    return op, carriers


def _merge_sum(children: List[OperadTerm], carriers: List, semiring: Semiring):
    """Combine the mergeable children of one sum node."""
    slots, at = [], 0
    for child in children:
        n = op_arity(child)
        slots.append((child, carriers[at : at + n]))
        at += n
    merged = {}  # carrier -> position of its first mergeable slot
    out = []
    for child, chunk in slots:
        coeff = None
        if isinstance(child, OpId):
            coeff = semiring.one
        elif isinstance(child, OpScaleL):
            coeff = child.k
        if coeff is None:
            out.append([child, chunk, None])
            continue
        c = chunk[0]
        if c in merged:
            slot = out[merged[c]]
            slot[2] = sr_add(slot[2], coeff)
        else:
            merged[c] = len(out)
            out.append([None, chunk, coeff])
    new_children, new_carriers = [], []
    for child, chunk, coeff in out:
        if child is None:
            if is_zero(coeff):
                continue  # coefficients cancelled; the slot vanishes
            child = scale_left(coeff)
        new_children.append(child)
        new_carriers.extend(chunk)
    if not new_children:
        return OpSum(0), []
    return op_compose(OpSum(len(new_children)), new_children), new_carriers


def _op_to_expr(op: OperadTerm, it) -> Expr:
    """Render an operad term over expression carriers as one expression."""
    if isinstance(op, OpId):
        return next(it)
    if isinstance(op, OpPrim):
        return Apply(op.fn, tuple(next(it) for _ in range(op.fn.arity)))
    if isinstance(op, OpSum):
        return _fold_sum([next(it) for _ in range(op.n)])
    if isinstance(op, OpScaleL):
        return LAct(op.k, next(it))
    if isinstance(op, OpScaleR):
        return RAct(next(it), op.k)
    if isinstance(op, OpComp):
        parts = [_op_to_expr(c, it) for c in op.children]
        head = op.head
        if isinstance(head, OpPrim):
            return Apply(head.fn, tuple(parts))
        if isinstance(head, OpSum):
            return _fold_sum(parts)
        if isinstance(head, OpScaleL):
            return LAct(head.k, parts[0])
        if isinstance(head, OpScaleR):
            return RAct(parts[0], head.k)
        if isinstance(head, OpId):
            return parts[0]
        raise SupportMismatch("split products have no expression rendering")
    if isinstance(op, OpProd):
        raise SupportMismatch("split products have no expression rendering")
    raise TypeError(f"not an operad term: {op!r}")


def _fold_sum(parts):
    if not parts:
        return EMPTY
    acc = parts[-1]
    for p in reversed(parts[:-1]):
        acc = Sum(p, acc)
    return acc


_SUPPORTS = {
    "maybe": MaybeSupport,
    "set": SetSupport,
    "lincomb": LinCombSupport,
    "gradcomb": GradCombSupport,
}


def get_support(name: str, semiring_name: str) -> Support:
    """Build a support; the optional-expression and set supports require
    Boolean weights since their weight level is the Boolean set."""
    if name not in _SUPPORTS:
        raise SupportMismatch(f"unknown support {name!r}")
    semiring = get_semiring(semiring_name)
    if name in ("maybe", "set") and semiring.name != "bool":
        raise SupportMismatch(f"the {name} support requires the bool semiring")
    return _SUPPORTS[name](semiring)
