"""FastAPI application exposing the derivative engine.

Domain errors map to structured JSON bodies: HTTP 422 for improper
expressions (the input parses but cannot be weighted), HTTP 400 for every
other invalid input.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import ImproperExpression, MonaderError
from . import ops
from .schemas import (
    AutomatonRequest,
    AutomatonResponse,
    DeriveRequest,
    DeriveResponse,
    ErrorResponse,
    OracleCheckRequest,
    OracleCheckResponse,
    ParseRequest,
    ParseResponse,
    WeightRequest,
    WeightResponse,
)

app = FastAPI(
    title="monader",
    version=__version__,
    description="Derivatives of extended weighted regular expressions over "
    "pluggable monadic supports.",
)


@app.exception_handler(MonaderError)
async def monader_error_handler(request: Request, exc: MonaderError):
    status = 422 if isinstance(exc, ImproperExpression) else 400
    detail = {"kind": exc.kind, "message": str(exc)}
    position = getattr(exc, "position", None)
    if position is not None:
        detail["position"] = position
    return JSONResponse(status_code=status, content={"error": detail})


@app.get("/health")
def health():
    return {"status": "ok", "version": __version__}


@app.post("/parse", response_model=ParseResponse, responses={400: {"model": ErrorResponse}})
def parse_endpoint(req: ParseRequest):
    return ops.do_parse(req)


@app.post(
    "/weight",
    response_model=WeightResponse,
    responses={400: {"model": ErrorResponse}, 422: {"model": ErrorResponse}},
)
def weight_endpoint(req: WeightRequest):
    return ops.do_weight(req)


@app.post(
    "/derive",
    response_model=DeriveResponse,
    responses={400: {"model": ErrorResponse}, 422: {"model": ErrorResponse}},
)
def derive_endpoint(req: DeriveRequest):
    return ops.do_derive(req)


@app.post(
    "/automaton",
    response_model=AutomatonResponse,
    responses={400: {"model": ErrorResponse}, 422: {"model": ErrorResponse}},
)
def automaton_endpoint(req: AutomatonRequest):
    return ops.do_automaton(req)


@app.post("/oracle-check", response_model=OracleCheckResponse)
def oracle_check_endpoint(req: OracleCheckRequest):
    return ops.do_oracle_check(req)
