import json

from fastapi.testclient import TestClient

from monader.service.app import app

from .conftest import PAPER_EXPR

client = TestClient(app)


def test_health():
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json()["status"] == "ok"


def test_parse_endpoint():
    resp = client.post("/parse", json={"expr": "eps.a*+nil", "semiring": "nat"})
    assert resp.status_code == 200
    body = resp.json()
    assert body["normalized"] == "a*"
    assert body["proper"] is True
    assert body["nullability"] == "1"
    assert body["alphabet"] == ["a"]


def test_weight_endpoint_paper_values():
    for support in ("lincomb", "gradcomb"):
        for word, expected in (("aaa", "3"), ("aab", "0")):
            resp = client.post(
                "/weight",
                json={
                    "expr": PAPER_EXPR,
                    "support": support,
                    "semiring": "nat",
                    "word": word,
                },
            )
            assert resp.status_code == 200
            assert resp.json() == {"weight": expected}


def test_derive_endpoint_gradcomb():
    resp = client.post(
        "/derive",
        json={"expr": PAPER_EXPR, "support": "gradcomb", "semiring": "nat", "word": "aab"},
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["value"]["op"] == "ExtDist"
    assert body["value"]["slots"] == [[["1", "b*"]], [["1", "b*"]], [["1", "b*.a*"]]]
    assert body["expr"] == "ExtDist(b*,b*,b*.a*)"


def test_derive_endpoint_empty_word_prints_input():
    resp = client.post(
        "/derive", json={"expr": "a.b", "support": "set", "word": ""}
    )
    assert resp.json()["lines"] == ["a.b"]


def test_automaton_endpoint_json():
    resp = client.post(
        "/automaton",
        json={
            "expr": PAPER_EXPR,
            "support": "gradcomb",
            "semiring": "nat",
            "max_states": 50,
            "format": "json",
        },
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["truncated"] is False
    assert len(body["automaton"]["states"]) == 7
    assert body["automaton"]["transitions"][0]["from"] == 0


def test_automaton_endpoint_dot_truncated():
    resp = client.post(
        "/automaton",
        json={
            "expr": PAPER_EXPR,
            "support": "lincomb",
            "semiring": "nat",
            "max_states": 50,
            "format": "dot",
        },
    )
    body = resp.json()
    assert body["truncated"] is True
    assert body["dot"].startswith("digraph")


def test_oracle_check_endpoint():
    resp = client.post(
        "/oracle-check",
        json={"support": "lincomb", "semiring": "nat", "samples": 5, "seed": 7},
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body == {"total": 5, "passed": 5, "ok": True, "failures": []}


def test_parse_error_body():
    resp = client.post("/parse", json={"expr": "a+"})
    assert resp.status_code == 400
    body = resp.json()
    assert body["error"]["kind"] == "syntax"
    assert body["error"]["position"] == 2


def test_improper_error_body():
    resp = client.post(
        "/weight", json={"expr": "(a*)*", "semiring": "nat", "support": "lincomb", "word": "a"}
    )
    assert resp.status_code == 422
    assert resp.json()["error"]["kind"] == "improper"


def test_support_semiring_mismatch():
    resp = client.post("/weight", json={"expr": "a", "support": "maybe", "semiring": "nat"})
    assert resp.status_code == 400
    assert resp.json()["error"]["kind"] == "support-mismatch"


def test_unknown_function_body():
    resp = client.post("/parse", json={"expr": "Bogus(a)"})
    assert resp.status_code == 400
    assert resp.json()["error"]["kind"] == "unknown-function"


def test_bad_weight_body():
    resp = client.post("/parse", json={"expr": "{1/2}a", "semiring": "nat"})
    assert resp.status_code == 400
    body = resp.json()
    assert body["error"]["kind"] == "bad-weight"
    assert body["error"]["position"] == 1
