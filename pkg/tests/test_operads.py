import random

import pytest

from monader.errors import ArityMismatch
from monader.functions import builtin_registry
from monader.operads import (
    ID,
    OpComp,
    OpId,
    OpPrim,
    OpProd,
    OpScaleL,
    OpScaleR,
    OpSum,
    op_arity,
    op_compose,
    op_compose_at,
    op_eval,
    op_normalize,
    op_render,
)
from monader.semirings import NAT, Weight, sr_add, sr_mul

EXT = builtin_registry(NAT)["ExtDist"]


def nat(n):
    return Weight("nat", n)


def rand_args(rng, n):
    return [nat(rng.randint(0, 9)) for _ in range(n)]


def test_arity_examples():
    assert op_arity(ID) == 1
    assert op_arity(OpComp(OpPrim(EXT), (OpSum(2), ID, OpSum(2)))) == 5
    assert op_arity(OpSum(0)) == 0
    assert op_arity(OpProd(OpSum(2), ID)) == 3


def test_compose_identity_laws():
    rng = random.Random(3)
    o = OpComp(OpPrim(EXT), (OpSum(2), ID, OpSum(2)))
    assert op_compose(ID, [o]) == o
    assert op_compose(o, [ID] * 5) == o
    assert op_compose_at(ID, 1, o) == o
    assert op_compose_at(OpPrim(EXT), 1, ID) == OpPrim(EXT)


def test_compose_sum_flattening():
    # Oracle: evaluate both sides on random triples.
    composed = op_compose(OpSum(2), [OpSum(2), ID])
    assert composed == OpSum(3)
    rng = random.Random(5)
    for _ in range(50):
        args = rand_args(rng, 3)
        direct = sr_add(sr_add(args[0], args[1]), args[2])
        assert op_eval(composed, args, NAT) == direct


def test_compose_at_scalar():
    # Oracle: x + 3 * y computed directly.
    o = op_compose_at(OpSum(2), 2, OpScaleL(nat(3)))
    rng = random.Random(7)
    for _ in range(50):
        x, y = rand_args(rng, 2)
        assert op_eval(o, [x, y], NAT) == sr_add(x, sr_mul(nat(3), y))
    with pytest.raises(IndexError):
        op_compose_at(OpSum(2), 3, ID)


def test_eval_examples():
    o = OpComp(OpPrim(EXT), (OpSum(2), ID, OpSum(2)))
    assert op_eval(o, [nat(1), nat(1), nat(1), nat(1), nat(3)], NAT) == nat(3)
    assert op_eval(OpPrim(EXT), [nat(1), nat(1), nat(1)], NAT) == nat(0)
    assert op_eval(OpSum(0), [], NAT) == nat(0)
    with pytest.raises(ArityMismatch):
        op_eval(OpSum(2), [nat(1)], NAT)


def test_eval_prod_split():
    o = OpProd(OpSum(2), OpScaleL(nat(3)))
    # (x + y) * (3 z)
    assert op_eval(o, [nat(1), nat(2), nat(4)], NAT) == nat(36)


def test_normalize_examples():
    assert op_compose(OpComp(OpScaleL(nat(2)), (ID,)), [ID]) == OpScaleL(nat(2))
    assert op_normalize(OpComp(OpSum(2), (OpSum(2), ID))) == OpSum(3)
    assert op_normalize(OpComp(OpScaleL(nat(2)), (OpScaleL(nat(3)),))) == OpScaleL(nat(6))
    assert op_normalize(OpComp(OpSum(2), (ID, OpSum(0)))) == ID
    assert op_normalize(OpScaleL(nat(1))) == ID
    assert op_normalize(OpSum(1)) == ID


def _random_term(rng, size):
    """A random operad term over nat with arity >= 0."""
    if size <= 1:
        return rng.choice(
            [ID, OpSum(rng.randint(0, 3)), OpScaleL(nat(rng.randint(1, 3))),
             OpScaleR(nat(rng.randint(1, 3))), OpPrim(EXT)]
        )
    head = rng.choice([OpSum(rng.randint(1, 3)), OpPrim(EXT), OpScaleL(nat(2)), ID])
    n = op_arity(head)
    children = [_random_term(rng, (size - 1) // max(n, 1)) for _ in range(n)]
    return OpComp(head, tuple(children))


def test_normalize_preserves_eval():
    rng = random.Random(13)
    for _ in range(150):
        o = _random_term(rng, rng.randint(1, 5))
        normed = op_normalize(o)
        args = rand_args(rng, op_arity(o))
        assert op_arity(normed) == op_arity(o)
        assert op_eval(normed, args, NAT) == op_eval(o, args, NAT)


def test_compose_arity_additivity():
    rng = random.Random(17)
    for _ in range(80):
        o = op_normalize(_random_term(rng, 3))
        children = [op_normalize(_random_term(rng, 2)) for _ in range(op_arity(o))]
        composed = op_compose(o, children)
        assert op_arity(composed) == sum(op_arity(c) for c in children)


def test_compose_arity_mismatch():
    with pytest.raises(ArityMismatch):
        op_compose(OpSum(2), [ID])


def test_operad_laws_by_evaluation():
    # id o1 p = p oj id = p, and the two composition identities, all compared
    # by evaluation on >= 100 random argument tuples.
    rng = random.Random(19)
    checked = 0
    while checked < 100:
        p1 = op_normalize(_random_term(rng, 3))
        m = op_arity(p1)
        if m == 0:
            continue
        p2 = op_normalize(_random_term(rng, 2))
        n = op_arity(p2)
        p3 = op_normalize(_random_term(rng, 2))
        p = op_arity(p3)
        j = rng.randint(1, m)

        args = rand_args(rng, op_arity(op_compose_at(p1, j, p2)))
        assert op_eval(op_compose_at(ID, 1, p1), rand_args(rng, m), NAT) is not None
        assert op_compose_at(ID, 1, p1) == p1
        assert op_compose_at(p1, j, ID) == p1

        # p1 oj (p2 oj' p3) = (p1 oj p2) o(j+j'-1) p3
        if n >= 1:
            jp = rng.randint(1, n)
            lhs = op_compose_at(p1, j, op_compose_at(p2, jp, p3))
            rhs = op_compose_at(op_compose_at(p1, j, p2), j + jp - 1, p3)
            args = rand_args(rng, op_arity(lhs))
            assert op_arity(lhs) == op_arity(rhs)
            assert op_eval(lhs, args, NAT) == op_eval(rhs, args, NAT)

        # (p1 oj p2) oj' p3 = (p1 oj' p3) o(j+p-1) p2 for j' < j
        if j >= 2:
            jp = rng.randint(1, j - 1)
            lhs = op_compose_at(op_compose_at(p1, j, p2), jp, p3)
            rhs = op_compose_at(op_compose_at(p1, jp, p3), j + p - 1, p2)
            args = rand_args(rng, op_arity(lhs))
            assert op_eval(lhs, args, NAT) == op_eval(rhs, args, NAT)
        checked += 1


def test_render_stable():
    o = OpComp(OpPrim(EXT), (OpSum(2), ID, OpSum(2)))
    assert op_render(o) == "ExtDist o (Sum2, Id, Sum2)"
    assert op_render(OpScaleL(nat(2))) == "2x"
    assert op_render(OpScaleR(nat(2))) == "x2"
    assert op_render(OpSum(0)) == "Sum0"
    assert op_render(OpProd(ID, OpSum(2))) == "Prod(Id, Sum2)"
