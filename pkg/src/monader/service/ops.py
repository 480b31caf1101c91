"""Service operations: the single implementation behind both the HTTP
endpoints and the CLI.  Functions take a request model and return a response
model, raising :class:`monader.errors.MonaderError` subclasses on bad input.
"""

from __future__ import annotations

import random

from ..automaton import automaton_dict, build, export_dot
from ..derivation import null, derive_word, part_null, weight
from ..functions import builtin_registry
from ..oracle import enumerate_weights
from ..randgen import random_proper_expr
from ..semirings import get_semiring, render, sr_eq
from ..supports import get_support
from ..syntax import infer_alphabet, normalize, parse, pretty
from ..operads import op_render
from .schemas import (
    AutomatonJSON,
    AutomatonRequest,
    AutomatonResponse,
    DeriveRequest,
    DeriveResponse,
    OracleCheckRequest,
    OracleCheckResponse,
    OracleFailure,
    ParseRequest,
    ParseResponse,
    WeightRequest,
    WeightResponse,
)


def _load(req) -> tuple:
    semiring = get_semiring(req.semiring)
    registry = builtin_registry(semiring)
    expr = parse(req.expr, semiring, registry)
    return semiring, registry, expr


def do_parse(req: ParseRequest) -> ParseResponse:
    semiring, _, expr = _load(req)
    pn = part_null(expr, semiring)
    return ParseResponse(
        pretty=pretty(expr),
        normalized=pretty(normalize(expr, semiring)),
        alphabet=list(infer_alphabet(expr, req.alphabet or "")),
        proper=pn is not None,
        nullability=None if pn is None else render(pn),
    )


def do_weight(req: WeightRequest) -> WeightResponse:
    semiring, _, expr = _load(req)
    support = get_support(req.support, req.semiring)
    return WeightResponse(weight=render(weight(support, expr, req.word)))


def _value_payload(support, v):
    """Support-shaped value over pretty-printed carrier expressions."""
    name = support.name
    if name == "maybe":
        return None if v is None else pretty(v)
    if name == "set":
        return [pretty(c) for c in support.carriers(v)]
    if name == "lincomb":
        return [[render(k), pretty(c)] for c, k in v.items]
    return {
        "op": op_render(v.op),
        "slots": [[[render(k), pretty(c)] for c, k in lc.items] for lc in v.slots],
    }


def _value_lines(support, v):
    name = support.name
    if name == "maybe":
        return [] if v is None else [pretty(v)]
    if name == "set":
        return [pretty(c) for c in support.carriers(v)]
    if name == "lincomb":
        return [f"{render(k)} ⊙ {pretty(c)}" for c, k in v.items]
    lines = [op_render(v.op)]
    for i, lc in enumerate(v.slots, start=1):
        for c, k in lc.items:
            lines.append(f"slot {i}: {render(k)} ⊙ {pretty(c)}")
    return lines


def do_derive(req: DeriveRequest) -> DeriveResponse:
    semiring, _, expr = _load(req)
    support = get_support(req.support, req.semiring)
    v = derive_word(support, expr, req.word)
    return DeriveResponse(
        support=req.support,
        value=_value_payload(support, v),
        expr=pretty(support.to_exp(v)),
        lines=_value_lines(support, v),
    )


def do_automaton(req: AutomatonRequest) -> AutomatonResponse:
    semiring, _, expr = _load(req)
    support = get_support(req.support, req.semiring)
    auto = build(support, expr, req.max_states, alphabet=req.alphabet)
    if req.format == "dot":
        return AutomatonResponse(format="dot", truncated=auto.truncated, dot=export_dot(auto))
    return AutomatonResponse(
        format="json",
        truncated=auto.truncated,
        automaton=AutomatonJSON.model_validate(automaton_dict(auto)),
    )


def do_oracle_check(req: OracleCheckRequest) -> OracleCheckResponse:
    """Check weight-via-derivatives against the series oracle on seeded
    random proper expressions; any mismatch is reported."""
    semiring = get_semiring(req.semiring)
    support = get_support(req.support, req.semiring)
    rng = random.Random(req.seed)
    failures = []
    for _ in range(req.samples):
        e = random_proper_expr(rng, semiring, req.size, alphabet="ab")
        expected = enumerate_weights(e, req.max_word_len, semiring, alphabet=("a", "b"))
        for w, want in expected.items():
            got = weight(support, e, w)
            if not sr_eq(got, want):
                failures.append(
                    OracleFailure(
                        expr=pretty(e), word=w, expected=render(want), actual=render(got)
                    )
                )
    return OracleCheckResponse(
        total=req.samples,
        passed=req.samples - len({f.expr for f in failures}),
        ok=not failures,
        failures=failures,
    )
