"""Pydantic request/response models for the HTTP API.

Weights and coefficients travel as canonical text (``"3"``, ``"1/2"``,
``"true"``) so exact values survive JSON.  Support-shaped values follow the
documented encoding: maybe is an id or null, set a list of ids, lincomb a
list of ``[coeff, id]`` pairs, gradcomb an operad text plus per-slot pair
lists.
"""

from __future__ import annotations

from typing import Any, List, Literal, Optional

from pydantic import BaseModel, Field

SupportName = Literal["maybe", "set", "lincomb", "gradcomb"]
SemiringName = Literal["bool", "nat", "int", "rat"]


class ExprQuery(BaseModel):
    expr: str
    support: SupportName = "set"
    semiring: SemiringName = "bool"
    alphabet: Optional[str] = Field(
        default=None, description="extra alphabet letters beyond those occurring"
    )


class ParseRequest(ExprQuery):
    pass


class ParseResponse(BaseModel):
    pretty: str
    normalized: str
    alphabet: List[str]
    proper: bool
    nullability: Optional[str]


class WeightRequest(ExprQuery):
    word: str = ""


class WeightResponse(BaseModel):
    weight: str


class DeriveRequest(ExprQuery):
    word: str = ""


class DeriveResponse(BaseModel):
    support: SupportName
    value: Any
    expr: str
    lines: List[str]


class AutomatonRequest(ExprQuery):
    max_states: int = Field(default=50, ge=1)
    format: Literal["dot", "json"] = "json"


class StateJSON(BaseModel):
    id: int
    label: str
    final: str


class TransitionJSON(BaseModel):
    from_: int = Field(alias="from")
    symbol: str
    target: Any

    model_config = {"populate_by_name": True}


class AutomatonJSON(BaseModel):
    support: SupportName
    semiring: SemiringName
    alphabet: List[str]
    states: List[StateJSON]
    initial: Any
    transitions: List[TransitionJSON]
    truncated: bool
    frontier: List[int]


class AutomatonResponse(BaseModel):
    format: Literal["dot", "json"]
    truncated: bool
    dot: Optional[str] = None
    automaton: Optional[AutomatonJSON] = None


class OracleCheckRequest(BaseModel):
    support: SupportName = "set"
    semiring: SemiringName = "bool"
    samples: int = Field(default=100, ge=1)
    max_word_len: int = Field(default=4, ge=0)
    seed: int = 0
    size: int = Field(default=8, ge=1)


class OracleFailure(BaseModel):
    expr: str
    word: str
    expected: str
    actual: str


class OracleCheckResponse(BaseModel):
    total: int
    passed: int
    ok: bool
    failures: List[OracleFailure]


class ErrorDetail(BaseModel):
    kind: str
    message: str
    position: Optional[int] = None


class ErrorResponse(BaseModel):
    error: ErrorDetail
