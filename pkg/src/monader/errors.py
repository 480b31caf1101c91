"""Exception types shared across the package.

Every domain error carries a machine-readable ``kind`` used by the service
layer and the CLI to map failures onto HTTP error bodies and exit codes.
"""


class MonaderError(Exception):
    kind = "error"


class ParseError(MonaderError):
    """Input text is not a well-formed expression."""

    kind = "syntax"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownFunction(MonaderError):
    kind = "unknown-function"


class ArityMismatch(MonaderError):
    kind = "arity-mismatch"


class BadWeightLiteral(MonaderError):
    kind = "bad-weight"


class SemiringMismatch(MonaderError):
    kind = "semiring-mismatch"


class SupportMismatch(MonaderError):
    kind = "support-mismatch"


class ImproperExpression(MonaderError):
    """A starred subexpression has a nullability that cannot be starred."""

    kind = "improper"


class WordTooLong(MonaderError):
    kind = "word-too-long"


class TruncatedAutomaton(MonaderError):
    """A run left the explored region of a budget-truncated automaton."""

    kind = "truncated"
