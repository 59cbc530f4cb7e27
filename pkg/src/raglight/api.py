"""HTTP JSON service.

Three POST endpoints wrap the same document-to-report pipeline the CLI
uses, plus a liveness probe. Every handler is a pure function of its
request body: no sessions, no persistence, no shared mutable state.
Validation failures come back as 4xx with the JSON-pointer field path
of the offending document location.

Response bodies go through the canonical serializer and end with a
newline, so they are byte-identical to the CLI's JSON output for the
same document.
"""

from __future__ import annotations

import json
import os

from fastapi import FastAPI, Request, Response

from . import __version__
from .documents import (
    build_portfolio,
    canonical_json,
    error_to_dict,
    parse_portfolio_document,
    parse_scenario_document,
    portfolio_report_to_dict,
    report_to_dict,
    roc_payload,
    validate_points,
)
from .engine import determine
from .errors import RaglightError, ValidationError

STATIC_ENV_VAR = "RAGLIGHT_STATIC"


def _json_response(payload, status_code: int = 200) -> Response:
    return Response(
        content=canonical_json(payload) + "\n",
        status_code=status_code,
        media_type="application/json",
    )


def _error_response(exc: Exception, status_code: int = 422) -> Response:
    if isinstance(exc, ValidationError):
        body = error_to_dict(exc)
    else:
        body = {"error": {"field": "", "message": str(exc)}}
    return _json_response(body, status_code=status_code)


async def _body(request: Request):
    raw = await request.body()
    return json.loads(raw)


def create_app(static_dir: str | None = None) -> FastAPI:
    """Build the service; optionally serve a static UI bundle at /."""
    app = FastAPI(title="raglight", version=__version__)

    @app.get("/api/v1/health")
    async def health() -> Response:
        return _json_response({"status": "ok", "version": __version__})

    @app.post("/api/v1/determine")
    async def determine_endpoint(request: Request) -> Response:
        try:
            scenario = parse_scenario_document(await _body(request))
            report = determine(scenario)
        except json.JSONDecodeError as exc:
            return _error_response(exc, status_code=400)
        except RaglightError as exc:
            return _error_response(exc)
        return _json_response(report_to_dict(report))

    @app.post("/api/v1/roc")
    async def roc_endpoint(request: Request) -> Response:
        try:
            body = await _body(request)
            if not isinstance(body, dict):
                raise ValidationError("request must be a JSON object", field="")
            if "scenario" not in body:
                raise ValidationError("missing required section", field="/scenario")
            scenario = parse_scenario_document(body["scenario"], path="/scenario")
            points = validate_points(body.get("points", 201))
            rows = roc_payload(scenario.model, points)
        except json.JSONDecodeError as exc:
            return _error_response(exc, status_code=400)
        except RaglightError as exc:
            return _error_response(exc)
        return _json_response(rows)

    @app.post("/api/v1/portfolio")
    async def portfolio_endpoint(request: Request) -> Response:
        try:
            inputs = parse_portfolio_document(await _body(request))
            portfolio = build_portfolio(inputs)
            payload = portfolio_report_to_dict(portfolio)
        except json.JSONDecodeError as exc:
            return _error_response(exc, status_code=400)
        except RaglightError as exc:
            return _error_response(exc)
        return _json_response(payload)

    static_dir = static_dir or os.environ.get(STATIC_ENV_VAR)
    if static_dir and os.path.isdir(static_dir):
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
