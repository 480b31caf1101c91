import random

import pytest

from monader.functions import builtin_registry
from monader.semirings import BOOLEAN, INT, NAT, RAT
from monader.supports import get_support
from monader.syntax import parse

ALL_SEMIRINGS = (BOOLEAN, NAT, INT, RAT)

# The four support/semiring pairs exercised throughout: the optional and set
# supports are Boolean by construction, the combination supports run over nat.
SUPPORT_PAIRS = (
    ("maybe", "bool"),
    ("set", "bool"),
    ("lincomb", "nat"),
    ("gradcomb", "nat"),
)

PAPER_EXPR = "ExtDist(a*.b*+b*.a*,b*.a*.b*,a*.b*.a*)"


def parse_nat(text):
    return parse(text, NAT, builtin_registry(NAT))


def parse_bool(text):
    return parse(text, BOOLEAN, builtin_registry(BOOLEAN))


@pytest.fixture
def paper_expr():
    return parse_nat(PAPER_EXPR)


@pytest.fixture
def rng():
    return random.Random(20240907)


def supports_for(pairs=SUPPORT_PAIRS):
    return [(get_support(s, k), s, k) for s, k in pairs]


def words_upto(n, alphabet="ab"):
    out = [""]
    frontier = [""]
    for _ in range(n):
        frontier = [w + a for w in frontier for a in alphabet]
        out.extend(frontier)
    return out
