import random

import pytest

from monader.errors import ArityMismatch, BadWeightLiteral, ParseError, UnknownFunction
from monader.functions import builtin_registry
from monader.oracle import oracle_weight
from monader.randgen import random_expr, random_proper_expr
from monader.semirings import BOOLEAN, NAT, RAT, Weight
from monader.syntax import (
    Apply,
    Cat,
    EMPTY,
    EPSILON,
    LAct,
    RAct,
    Star,
    Sum,
    Sym,
    infer_alphabet,
    normalize,
    parse,
    pretty,
    symbol_occurrences,
)

from .conftest import ALL_SEMIRINGS, PAPER_EXPR, parse_bool, parse_nat, words_upto


def test_parse_paper_input():
    e = parse_nat(PAPER_EXPR)
    ext = builtin_registry(NAT)["ExtDist"]
    a, b = Star(Sym("a")), Star(Sym("b"))
    assert e == Apply(
        ext,
        (
            Sum(Cat(a, b), Cat(b, a)),
            Cat(b, Cat(a, b)),
            Cat(a, Cat(b, a)),
        ),
    )


def test_parse_literals():
    assert parse_nat("eps") == EPSILON
    assert parse_nat("nil") == EMPTY
    assert parse_nat("{2}a*") == LAct(Weight("nat", 2), Star(Sym("a")))
    assert parse_nat("a*{2}") == RAct(Star(Sym("a")), Weight("nat", 2))
    assert parse_nat("{2}a{3}") == LAct(
        Weight("nat", 2), RAct(Sym("a"), Weight("nat", 3))
    )
    assert parse_nat("a.b.c") == Cat(Sym("a"), Cat(Sym("b"), Sym("c")))
    assert parse_nat("a+b+c") == Sum(Sym("a"), Sum(Sym("b"), Sym("c")))
    assert parse_nat("a**") == Star(Star(Sym("a")))
    assert parse_bool("{true}a") == LAct(Weight("bool", True), Sym("a"))


def test_parse_errors():
    with pytest.raises(ParseError) as exc:
        parse_nat("a+")
    assert exc.value.position == 2
    with pytest.raises(ParseError):
        parse_nat("abc")  # reserved multi-letter word
    with pytest.raises(ParseError):
        parse_nat("(a")
    with pytest.raises(UnknownFunction):
        parse_nat("Foo(a)")
    with pytest.raises(ArityMismatch):
        parse_nat("ExtDist(a,b)")
    with pytest.raises(BadWeightLiteral) as exc:
        parse_nat("{-1}a")  # bad nat literal
    assert exc.value.position == 1
    with pytest.raises(ParseError):
        parse_nat("{2")


def test_pretty_examples():
    assert pretty(Star(Sym("a"))) == "a*"
    assert pretty(Cat(Star(Sym("a")), Star(Sym("b")))) == "a*.b*"
    assert pretty(LAct(Weight("nat", 3), Star(Sym("a")))) == "{3}a*"
    assert pretty(parse_nat(PAPER_EXPR)) == PAPER_EXPR


def test_pretty_structure_preserving():
    # Left-nested chains need parentheses so round-trips stay exact.
    assert pretty(Sum(Sum(Sym("a"), Sym("b")), Sym("c"))) == "(a+b)+c"
    assert pretty(Cat(Cat(Sym("a"), Sym("b")), Sym("c"))) == "(a.b).c"
    assert pretty(Star(Sum(Sym("a"), Sym("b")))) == "(a+b)*"
    assert pretty(RAct(LAct(Weight("nat", 2), Sym("a")), Weight("nat", 3))) == "({2}a){3}"
    assert pretty(Star(RAct(Sym("a"), Weight("nat", 2)))) == "(a{2})*"


def test_roundtrip_random():
    for sr in ALL_SEMIRINGS:
        rng = random.Random(101)
        registry = builtin_registry(sr)
        for _ in range(200):
            e = random_expr(rng, sr, rng.randint(1, 10))
            assert parse(pretty(e), sr, registry) == e


def test_roundtrip_exhaustive_small():
    # Every tree shape up to two constructor layers round-trips exactly.
    registry = builtin_registry(NAT)
    w = Weight("nat", 2)
    ext = registry["ExtDist"]

    def layer(prev):
        out = []
        for x in prev:
            out.extend([Star(x), LAct(w, x), RAct(x, w)])
            for y in prev:
                out.extend([Sum(x, y), Cat(x, y)])
        for x in prev[:3]:
            out.append(Apply(ext, (x, x, x)))
        return out

    level0 = [Sym("a"), Sym("b"), EPSILON, EMPTY]
    level1 = layer(level0)
    for e in level0 + level1 + layer(level0 + level1[:40]):
        assert parse(pretty(e), NAT, registry) == e


def test_normalize_examples():
    assert normalize(Cat(EPSILON, Star(Sym("b"))), NAT) == Star(Sym("b"))
    assert normalize(Sum(EMPTY, Sym("a")), NAT) == Sym("a")
    assert normalize(Sum(Sym("b"), Sym("a")), BOOLEAN) == Sum(Sym("a"), Sym("b"))
    assert normalize(Star(EMPTY), NAT) == EPSILON
    assert normalize(Star(EPSILON), NAT) == EPSILON
    assert normalize(LAct(Weight("nat", 1), Sym("a")), NAT) == Sym("a")
    assert normalize(LAct(Weight("nat", 0), Sym("a")), NAT) == EMPTY
    assert normalize(
        LAct(Weight("nat", 2), LAct(Weight("nat", 3), Sym("a"))), NAT
    ) == LAct(Weight("nat", 6), Sym("a"))
    assert normalize(
        RAct(RAct(Sym("a"), Weight("nat", 2)), Weight("nat", 3)), NAT
    ) == RAct(Sym("a"), Weight("nat", 6))
    assert normalize(Cat(Sym("a"), EMPTY), NAT) == EMPTY


def test_sum_merge_only_when_idempotent():
    dup = Sum(Sym("a"), Sym("a"))
    assert normalize(dup, BOOLEAN) == Sym("a")
    assert normalize(dup, NAT) == dup  # weight of "a" is 2, must not collapse


def test_normalize_idempotent_random():
    rng = random.Random(55)
    for sr in ALL_SEMIRINGS:
        for _ in range(150):
            e = random_expr(rng, sr, rng.randint(1, 10))
            n1 = normalize(e, sr)
            assert normalize(n1, sr) == n1


def test_normalize_preserves_series():
    rng = random.Random(77)
    for sr in (BOOLEAN, NAT, RAT):
        for _ in range(40):
            e = random_proper_expr(rng, sr, 8)
            n = normalize(e, sr)
            for w in words_upto(5):
                assert oracle_weight(e, w, sr) == oracle_weight(n, w, sr)


def test_alphabet_helpers():
    e = parse_nat(PAPER_EXPR)
    assert infer_alphabet(e) == ("a", "b")
    assert infer_alphabet(e, "cd") == ("a", "b", "c", "d")
    assert symbol_occurrences(e) == 10
    assert symbol_occurrences(parse_nat("eps")) == 0
