"""monader: derivatives of extended weighted regular expressions.

Expressions extend classical regular syntax with scalar actions and
arbitrary n-ary weight functions; derivatives are computed over one of four
interchangeable supports (optional expression, expression set, linear
combination, graded/operadic combination), all validated against an
independent brute-force series oracle.
"""

from .automaton import DerivAutomaton, build, export_dot, export_json, run
from .derivation import (
    derive_symbol,
    derive_word,
    ensure_proper,
    is_proper,
    null,
    part_null,
    weight,
)
from .errors import (
    ArityMismatch,
    BadWeightLiteral,
    ImproperExpression,
    MonaderError,
    ParseError,
    SemiringMismatch,
    SupportMismatch,
    TruncatedAutomaton,
    UnknownFunction,
    WordTooLong,
)
from .functions import FnRef, builtin_registry
from .oracle import enumerate_weights, oracle_weight
from .semirings import (
    BOOLEAN,
    INT,
    NAT,
    RAT,
    SEMIRINGS,
    Weight,
    get_semiring,
    sr_add,
    sr_eq,
    sr_mul,
    sr_one,
    sr_star,
    sr_zero,
)
from .supports import Support, get_support, lift_n
from .syntax import Expr, infer_alphabet, normalize, parse, pretty

__version__ = "0.1.0"
