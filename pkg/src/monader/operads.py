"""Composable n-ary weight functions with graded arity.

A term denotes a function over the active semiring:

* ``OpId``          -- identity, arity 1
* ``OpPrim(f)``     -- a registered function, arity of ``f``
* ``OpSum(n)``      -- ``(x1, ..., xn) -> x1 + ... + xn``; ``OpSum(0)`` is the
                       constant zero and embeds a vanished argument slot
* ``OpScaleL(k)``   -- ``x -> k * x``
* ``OpScaleR(k)``   -- ``x -> x * k``
* ``OpProd(o, o')`` -- the split product: ``o`` applied to the first
                       ``arity(o)`` arguments times ``o'`` applied to the rest
* ``OpComp(o, cs)`` -- composition ``o(c1(..), ..., ck(..))``

``compose`` is the smart constructor: it keeps terms in a canonical form
(identity collapses, scalar fusion, sums flattened, vanished slots dropped)
without ever reordering arguments, since argument order is significant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

from .errors import ArityMismatch
from .functions import FnRef
from .semirings import Semiring, Weight, is_one, render, sr_add, sr_mul


class OperadTerm:
    __slots__ = ()


@dataclass(frozen=True)
class OpId(OperadTerm):
    pass


@dataclass(frozen=True)
class OpPrim(OperadTerm):
    fn: FnRef


@dataclass(frozen=True)
class OpSum(OperadTerm):
    n: int


@dataclass(frozen=True)
class OpScaleL(OperadTerm):
    k: Weight


@dataclass(frozen=True)
class OpScaleR(OperadTerm):
    k: Weight


@dataclass(frozen=True)
class OpProd(OperadTerm):
    left: OperadTerm
    right: OperadTerm


@dataclass(frozen=True)
class OpComp(OperadTerm):
    head: OperadTerm
    children: Tuple[OperadTerm, ...]


ID = OpId()


def op_arity(o: OperadTerm) -> int:
    if isinstance(o, OpId):
        return 1
    if isinstance(o, OpPrim):
        return o.fn.arity
    if isinstance(o, OpSum):
        return o.n
    if isinstance(o, (OpScaleL, OpScaleR)):
        return 1
    if isinstance(o, OpProd):
        return op_arity(o.left) + op_arity(o.right)
    if isinstance(o, OpComp):
        return sum(op_arity(c) for c in o.children)
    raise TypeError(f"not an operad term: {o!r}")


def _split(children: Sequence[OperadTerm], args: Sequence):
    """Partition ``args`` into per-child chunks by child arity."""
    chunks, at = [], 0
    for c in children:
        n = op_arity(c)
        chunks.append(args[at : at + n])
        at += n
    return chunks


def scale_left(k: Weight) -> OperadTerm:
    return ID if is_one(k) else OpScaleL(k)


def scale_right(k: Weight) -> OperadTerm:
    return ID if is_one(k) else OpScaleR(k)


def op_compose(o: OperadTerm, children: Sequence[OperadTerm]) -> OperadTerm:
    """Compose ``o`` with one child term per argument slot, canonically."""
    children = tuple(children)
    if len(children) != op_arity(o):
        raise ArityMismatch(
            f"composition needs {op_arity(o)} children, got {len(children)}"
        )
    if isinstance(o, OpId):
        return children[0]
    if isinstance(o, (OpScaleL, OpScaleR)) and is_one(o.k):
        return children[0]
    if isinstance(o, OpSum) and o.n == 1:
        return children[0]
    if isinstance(o, OpComp):
        # Associativity: push the outer composition into the children.
        return op_compose(
            o.head,
            [op_compose(c, chunk) for c, chunk in zip(o.children, _split(o.children, children))],
        )
    if isinstance(o, OpScaleL):
        child = children[0]
        if isinstance(child, OpId):
            return o
        if isinstance(child, OpScaleL):
            return scale_left(sr_mul(o.k, child.k))
        if isinstance(child, OpComp) and isinstance(child.head, OpScaleL):
            return op_compose(scale_left(sr_mul(o.k, child.head.k)), child.children)
        if child == OpSum(0):
            return OpSum(0)
        return OpComp(o, children)
    if isinstance(o, OpScaleR):
        child = children[0]
        if isinstance(child, OpId):
            return o
        if isinstance(child, OpScaleR):
            return scale_right(sr_mul(child.k, o.k))
        if isinstance(child, OpComp) and isinstance(child.head, OpScaleR):
            return op_compose(scale_right(sr_mul(child.head.k, o.k)), child.children)
        if child == OpSum(0):
            return OpSum(0)
        return OpComp(o, children)
    if isinstance(o, OpSum):
        flat = []
        for c in children:
            if isinstance(c, OpSum):
                # A sum under a sum contributes its arguments directly;
                # OpSum(0) contributes nothing (x + 0 = x).
                flat.extend([ID] * c.n)
            elif isinstance(c, OpComp) and isinstance(c.head, OpSum):
                flat.extend(c.children)
            else:
                flat.append(c)
        if not flat:
            return OpSum(0)
        if len(flat) == 1:
            return flat[0]
        if all(isinstance(c, OpId) for c in flat):
            return OpSum(len(flat))
        return OpComp(OpSum(len(flat)), tuple(flat))
    # OpPrim / OpProd heads.
    if all(isinstance(c, OpId) for c in children):
        return o
    return OpComp(o, children)


def op_compose_at(o: OperadTerm, j: int, p: OperadTerm) -> OperadTerm:
    """Compose ``p`` into the 1-based slot ``j`` of ``o``."""
    n = op_arity(o)
    if not 1 <= j <= n:
        raise IndexError(f"slot {j} out of range for arity {n}")
    return op_compose(o, [p if i == j else ID for i in range(1, n + 1)])


def op_normalize(o: OperadTerm) -> OperadTerm:
    """Rebuild a term bottom-up through the canonicalizing constructor."""
    if isinstance(o, OpComp):
        return op_compose(op_normalize(o.head), [op_normalize(c) for c in o.children])
    if isinstance(o, OpScaleL) and is_one(o.k):
        return ID
    if isinstance(o, OpScaleR) and is_one(o.k):
        return ID
    if isinstance(o, OpSum) and o.n == 1:
        return ID
    if isinstance(o, OpProd):
        return OpProd(op_normalize(o.left), op_normalize(o.right))
    return o


def op_eval(o: OperadTerm, args: Sequence[Weight], semiring: Semiring) -> Weight:
    """Evaluate the denoted function on ``args``."""
    if len(args) != op_arity(o):
        raise ArityMismatch(f"{op_render(o)} expects {op_arity(o)} arguments, got {len(args)}")
    if isinstance(o, OpId):
        return args[0]
    if isinstance(o, OpPrim):
        return o.fn.apply(list(args))
    if isinstance(o, OpSum):
        acc = semiring.zero
        for a in args:
            acc = sr_add(acc, a)
        return acc
    if isinstance(o, OpScaleL):
        return sr_mul(o.k, args[0])
    if isinstance(o, OpScaleR):
        return sr_mul(args[0], o.k)
    if isinstance(o, OpProd):
        nl = op_arity(o.left)
        return sr_mul(
            op_eval(o.left, args[:nl], semiring), op_eval(o.right, args[nl:], semiring)
        )
    if isinstance(o, OpComp):
        vals = [
            op_eval(c, chunk, semiring)
            for c, chunk in zip(o.children, _split(o.children, args))
        ]
        return op_eval(o.head, vals, semiring)
    raise TypeError(f"not an operad term: {o!r}")


def op_render(o: OperadTerm) -> str:
    """Stable ASCII text form, e.g. ``ExtDist o (Sum2, Id, Sum2)``."""
    if isinstance(o, OpId):
        return "Id"
    if isinstance(o, OpPrim):
        return o.fn.name
    if isinstance(o, OpSum):
        return f"Sum{o.n}"
    if isinstance(o, OpScaleL):
        return f"{render(o.k)}x"
    if isinstance(o, OpScaleR):
        return f"x{render(o.k)}"
    if isinstance(o, OpProd):
        return f"Prod({op_render(o.left)}, {op_render(o.right)})"
    if isinstance(o, OpComp):
        inner = ", ".join(op_render(c) for c in o.children)
        return f"{op_render(o.head)} o ({inner})"
    raise TypeError(f"not an operad term: {o!r}")
