"""Derivative automata: states are canonical derivated terms, transitions
are monadic values, running a word is a fold of Kleisli binds.

Construction explores breadth-first from the carriers of ``pure(e)`` with a
state budget.  Zero values are implicit sinks and never counted as states.
When the budget is hit the partial automaton is returned with
``truncated=True`` and the unexpanded states listed as the frontier; running
a word that enters the frontier raises :class:`TruncatedAutomaton`.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .derivation import derive_symbol, ensure_proper, null
from .errors import TruncatedAutomaton
from .operads import OpId, op_render
from .semirings import Weight, is_zero, render
from .supports import IndexDomain, Support
from .syntax import Expr, infer_alphabet, normalize, pretty


@dataclass
class DerivAutomaton:
    support: Support  # index-domain instance used by run()
    alphabet: Tuple[str, ...]
    states: List[Expr]
    labels: List[str]
    initial: object
    transitions: Dict[Tuple[int, str], object]
    finals: Dict[int, Weight]
    truncated: bool
    frontier: List[int] = field(default_factory=list)


class _BudgetExceeded(Exception):
    pass


def build(
    support: Support, e: Expr, max_states: int, alphabet: Optional[str] = None
) -> DerivAutomaton:
    """Breadth-first derivative closure with a distinct-state budget."""
    if max_states < 1:
        raise ValueError("max_states must be at least 1")
    sr = support.semiring
    ensure_proper(e, sr)
    sigma = infer_alphabet(e, alphabet or "")

    states: List[Expr] = []
    labels: List[str] = []
    finals: Dict[int, Weight] = {}
    index: Dict[Expr, int] = {}
    queue = deque()

    def intern(c: Expr) -> int:
        at = index.get(c)
        if at is not None:
            return at
        if len(states) + 1 > max_states:
            raise _BudgetExceeded
        at = len(states)
        index[c] = at
        states.append(c)
        labels.append(pretty(c))
        finals[at] = null(c, sr)
        queue.append(at)
        return at

    index_support = support.with_domain(IndexDomain())

    def relabel(v):
        for c in support.carriers(v):
            intern(c)
        return support.map_carriers(v, lambda c: index[c], IndexDomain())

    transitions: Dict[Tuple[int, str], object] = {}
    truncated = False
    frontier: List[int] = []

    try:
        initial = relabel(support.pure(normalize(e, sr)))
    except _BudgetExceeded:  # unreachable for max_states >= 1, kept defensive
        initial = index_support.zero()
        truncated = True

    while queue and not truncated:
        q = queue.popleft()
        staged = {}
        try:
            for a in sigma:
                staged[(q, a)] = relabel(derive_symbol(support, states[q], a))
        except _BudgetExceeded:
            truncated = True
            frontier = [q] + sorted(queue)
            break
        transitions.update(staged)

    return DerivAutomaton(
        support=index_support,
        alphabet=sigma,
        states=states,
        labels=labels,
        initial=initial,
        transitions=transitions,
        finals=finals,
        truncated=truncated,
        frontier=frontier,
    )


def run(auto: DerivAutomaton, word: str) -> Weight:
    """Kleisli fold: start from the initial value, bind one transition per
    symbol, then bind the final weights.

    The fold is only defined over the automaton's alphabet: for extended
    expressions a foreign symbol need not act as zero (complement-like
    functions weigh it), so it is rejected rather than silently dropped.
    """
    sup = auto.support

    def step(a: str):
        def f(q: int):
            try:
                return auto.transitions[(q, a)]
            except KeyError:
                raise TruncatedAutomaton(
                    f"state {q} was not expanded (budget was hit)"
                ) from None

        return f

    for ch in word:
        if ch not in auto.alphabet:
            raise ValueError(f"symbol {ch!r} is not in the automaton alphabet")
    v = auto.initial
    for ch in word:
        v = sup.bind(v, step(ch))
    return sup.weight_of(v, lambda q: auto.finals[q])


# ---------------------------------------------------------------------------
# Exports.


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(auto: DerivAutomaton) -> str:
    """Graphviz rendering: double peripheries and a weight annotation on
    final states, dashed operad boxes on graded transitions."""
    sup = auto.support
    lines = ["digraph derivatives {", "  rankdir=LR;"]
    lines.append("  __init [shape=point, label=\"\"];")
    for i, label in enumerate(auto.labels):
        attrs = [f"label={_dot_quote(label)}", "shape=box", "style=rounded"]
        final = auto.finals[i]
        if not is_zero(final):
            attrs.append("peripheries=2")
            attrs.append(f"xlabel={_dot_quote(render(final))}")
        lines.append(f"  q{i} [{', '.join(attrs)}];")

    def arrow(src: str, dst: str, label: str = ""):
        attrs = f" [label={_dot_quote(label)}]" if label else ""
        lines.append(f"  {src} -> {dst}{attrs};")

    def edges(src: str, label: str, v, node_hint: str):
        name = sup.name
        if name == "maybe":
            if v is not None:
                arrow(src, f"q{v}", label)
        elif name == "set":
            for q in sorted(v):
                arrow(src, f"q{q}", label)
        elif name == "lincomb":
            for q, k in v.items:
                arrow(src, f"q{q}", f"{label} / {render(k)}" if label else render(k))
        else:
            if isinstance(v.op, OpId):
                q, _ = v.slots[0].items[0]
                arrow(src, f"q{q}", label)
                return
            if not v.slots:
                return
            box = f"op_{node_hint}"
            lines.append(
                f"  {box} [shape=box, style=dashed, label={_dot_quote(op_render(v.op))}];"
            )
            arrow(src, box, label)
            for lc in v.slots:
                for q, k in lc.items:
                    one = render(k) == render(sup.semiring.one)
                    arrow(box, f"q{q}", "" if one else render(k))

    edges("__init", "", auto.initial, "init")
    for (q, a), v in sorted(auto.transitions.items()):
        edges(f"q{q}", a, v, f"{q}_{a}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def value_json(sup: Support, v):
    """The documented support-shaped JSON for a value over state indices."""
    name = sup.name
    if name == "maybe":
        return v
    if name == "set":
        return sorted(v)
    if name == "lincomb":
        return [[render(k), q] for q, k in v.items]
    return {
        "op": op_render(v.op),
        "slots": [[[render(k), q] for q, k in lc.items] for lc in v.slots],
    }


def automaton_dict(auto: DerivAutomaton) -> dict:
    sup = auto.support
    return {
        "support": sup.name,
        "semiring": sup.semiring.name,
        "alphabet": list(auto.alphabet),
        "states": [
            {"id": i, "label": auto.labels[i], "final": render(auto.finals[i])}
            for i in range(len(auto.states))
        ],
        "initial": value_json(sup, auto.initial),
        "transitions": [
            {"from": q, "symbol": a, "target": value_json(sup, v)}
            for (q, a), v in sorted(auto.transitions.items())
        ],
        "truncated": auto.truncated,
        "frontier": list(auto.frontier),
    }


def export_json(auto: DerivAutomaton) -> str:
    return json.dumps(automaton_dict(auto), indent=2)
