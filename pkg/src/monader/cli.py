"""Command-line front end: a thin client over the service operations.

Subcommands mirror the HTTP endpoints (parse, derive, weight, automaton,
oracle-check); by default they execute in-process, with ``--server URL``
they post the same JSON bodies to a running service.  stdout carries data
only; diagnostics go to stderr.

Exit codes: 0 success, 1 oracle-check found mismatches, 2 invalid input,
3 improper expression.
"""

from __future__ import annotations

import argparse
import json
import sys
import urllib.error
import urllib.request

import pydantic

from .errors import ImproperExpression, MonaderError
from .service import ops
from .service.schemas import (
    AutomatonRequest,
    DeriveRequest,
    OracleCheckRequest,
    ParseRequest,
    WeightRequest,
)


def _common_flags(p: argparse.ArgumentParser, word: bool = True):
    p.add_argument("--expr", required=True, help="expression text")
    p.add_argument(
        "--support",
        choices=("maybe", "set", "lincomb", "gradcomb"),
        default="set",
    )
    p.add_argument("--semiring", choices=("bool", "nat", "int", "rat"), default="bool")
    p.add_argument("--alphabet", default=None, help="extra alphabet letters")
    if word:
        p.add_argument("--word", default="", help="input word")
    p.add_argument("--json", action="store_true", help="emit the full JSON response")
    p.add_argument("--server", default=None, help="POST to a running service instead")


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monader",
        description="Derivatives of extended weighted regular expressions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    _common_flags(sub.add_parser("parse", help="parse and normalize"), word=False)
    _common_flags(sub.add_parser("weight", help="weight of a word"))
    _common_flags(sub.add_parser("derive", help="derivative by a word"))

    auto = sub.add_parser("automaton", help="derivative automaton export")
    _common_flags(auto, word=False)
    auto.add_argument("--max-states", type=int, default=50)
    auto.add_argument("--format", choices=("dot", "json"), default="json")

    check = sub.add_parser("oracle-check", help="theorem suite vs the series oracle")
    check.add_argument(
        "--support",
        choices=("maybe", "set", "lincomb", "gradcomb"),
        default="set",
    )
    check.add_argument("--semiring", choices=("bool", "nat", "int", "rat"), default="bool")
    check.add_argument("--max-word-len", type=int, default=4)
    check.add_argument("--samples", type=int, default=100)
    check.add_argument("--seed", type=int, default=0)
    check.add_argument("--size", type=int, default=8)
    check.add_argument("--json", action="store_true")
    check.add_argument("--server", default=None)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)

    return parser


_ENDPOINTS = {
    "parse": ("/parse", ParseRequest, ops.do_parse),
    "weight": ("/weight", WeightRequest, ops.do_weight),
    "derive": ("/derive", DeriveRequest, ops.do_derive),
    "automaton": ("/automaton", AutomatonRequest, ops.do_automaton),
    "oracle-check": ("/oracle-check", OracleCheckRequest, ops.do_oracle_check),
}


def _request_body(args) -> dict:
    body = {}
    for key in (
        "expr",
        "support",
        "semiring",
        "alphabet",
        "word",
        "max_states",
        "format",
        "samples",
        "seed",
        "size",
    ):
        if hasattr(args, key) and getattr(args, key) is not None:
            body[key] = getattr(args, key)
    if hasattr(args, "max_word_len"):
        body["max_word_len"] = args.max_word_len
    return body


def _call(args) -> dict:
    """Run the selected operation, in-process or against --server."""
    path, model, fn = _ENDPOINTS[args.command]
    body = _request_body(args)
    if args.server:
        url = args.server.rstrip("/") + path
        data = json.dumps(body).encode()
        req = urllib.request.Request(
            url, data=data, headers={"Content-Type": "application/json"}
        )
        try:
            with urllib.request.urlopen(req) as resp:
                return json.loads(resp.read())
        except urllib.error.HTTPError as exc:
            payload = json.loads(exc.read() or b"{}")
            detail = payload.get("error", {})
            err = ImproperExpression if detail.get("kind") == "improper" else MonaderError
            raise err(detail.get("message", f"HTTP {exc.code}"))
    return fn(model.model_validate(body)).model_dump(by_alias=True)


def _print_response(args, resp: dict) -> int:
    if getattr(args, "json", False):
        print(json.dumps(resp, indent=2))
        return 0
    cmd = args.command
    if cmd == "parse":
        print(resp["normalized"])
    elif cmd == "weight":
        print(resp["weight"])
    elif cmd == "derive":
        for line in resp["lines"]:
            print(line)
    elif cmd == "automaton":
        if resp["truncated"]:
            print("truncated: true", file=sys.stderr)
        if resp["format"] == "dot":
            sys.stdout.write(resp["dot"])
        else:
            print(json.dumps(resp["automaton"], indent=2))
    elif cmd == "oracle-check":
        print(f"{resp['passed']}/{resp['total']} ok")
        for f in resp["failures"]:
            print(
                f"mismatch: {f['expr']} @ {f['word']!r}: "
                f"expected {f['expected']}, got {f['actual']}",
                file=sys.stderr,
            )
        return 0 if resp["ok"] else 1
    return 0


def main(argv=None) -> int:
    args = build_arg_parser().parse_args(argv)
    if args.command == "serve":
        try:
            import uvicorn
        except ImportError:
            print("serve requires uvicorn (pip install uvicorn)", file=sys.stderr)
            return 2
        uvicorn.run("monader.service.app:app", host=args.host, port=args.port)
        return 0
    try:
        resp = _call(args)
    except ImproperExpression as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except MonaderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except pydantic.ValidationError as exc:
        for err in exc.errors():
            where = ".".join(str(p) for p in err["loc"])
            print(f"error: {where}: {err['msg']}", file=sys.stderr)
        return 2
    return _print_response(args, resp)


if __name__ == "__main__":
    sys.exit(main())
