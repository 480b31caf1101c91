import pytest

from monader.errors import ImproperExpression, WordTooLong
from monader.oracle import enumerate_weights, max_word_len, oracle_weight
from monader.semirings import BOOLEAN, NAT, Weight
from monader.syntax import Cat, EPSILON, LAct, Star, Sum, Sym

from .conftest import parse_nat


def nat(n):
    return Weight("nat", n)


def test_examples(paper_expr):
    assert oracle_weight(Cat(Sym("a"), Sym("b")), "ab", BOOLEAN) == BOOLEAN.one
    assert oracle_weight(Cat(Sym("a"), Sym("b")), "ba", BOOLEAN) == BOOLEAN.zero
    # (a+a)* on "aa": the (a)(a) composition contributes 2*2, (aa) contributes 0
    assert oracle_weight(Star(Sum(Sym("a"), Sym("a"))), "aa", NAT) == nat(4)
    assert oracle_weight(paper_expr, "aaa", NAT) == nat(3)
    assert oracle_weight(paper_expr, "aab", NAT) == nat(0)


def test_star_geometric_counting():
    # Closed form on a singleton alphabet: ({2}a)* weighs a^n as 2^n, since
    # only the all-singletons composition contributes.
    e = Star(LAct(nat(2), Sym("a")))
    for n in range(0, 7):
        assert oracle_weight(e, "a" * n, NAT) == nat(2 ** n)
    # (a+a)* is the same series: each letter chosen two ways.
    e2 = Star(Sum(Sym("a"), Sym("a")))
    for n in range(0, 7):
        assert oracle_weight(e2, "a" * n, NAT) == nat(2 ** n)


def test_star_mixed_lengths():
    # ({2}a + {3}a.a)*: weight of a^3 = 2^3 + 2*3 + 3*2 = 20
    e = parse_nat("({2}a+{3}a.a)*")
    assert oracle_weight(e, "aaa", NAT) == nat(20)


def test_actions_sides():
    e = parse_nat("{2}a{3}")
    assert oracle_weight(e, "a", NAT) == nat(6)
    assert oracle_weight(e, "", NAT) == nat(0)


def test_enumerate_weights_examples():
    out = enumerate_weights(Sym("a"), 1, NAT, alphabet=("a", "b"))
    assert out == {"": nat(0), "a": nat(1), "b": nat(0)}
    out = enumerate_weights(EPSILON, 1, NAT, alphabet=("a", "b"))
    assert out == {"": nat(1), "a": nat(0), "b": nat(0)}


def test_enumerate_weights_paper(paper_expr):
    out = enumerate_weights(paper_expr, 3, NAT)
    assert out["aaa"] == nat(3)
    assert out["aab"] == nat(0)
    assert len(out) == 1 + 2 + 4 + 8


def test_word_too_long():
    with pytest.raises(WordTooLong):
        oracle_weight(Sym("a"), "a" * (max_word_len() + 1), NAT)


def test_env_override(monkeypatch):
    monkeypatch.setenv("MONADER_MAX_ORACLE_LEN", "2")
    with pytest.raises(WordTooLong):
        oracle_weight(Sym("a"), "aaa", NAT)
    monkeypatch.setenv("MONADER_MAX_ORACLE_LEN", "12")
    assert oracle_weight(Star(Sym("a")), "a" * 12, NAT) == nat(1)


def test_improper_rejected():
    with pytest.raises(ImproperExpression):
        oracle_weight(Star(EPSILON), "a", NAT)
