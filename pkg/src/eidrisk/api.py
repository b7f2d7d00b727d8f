"""HTTP service exposing the register and scoring engine.

All request bodies are parsed by the same parsers the file store uses and
all score payloads come from the shared report serializers, so the service
is a thin transport layer: no arithmetic and no validation logic of its
own. Errors always arrive as {"errors": [{code, message, field_path}]}.
"""
from __future__ import annotations

import os
import threading
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .errors import (
    DomainError,
    EidRiskError,
    ParseError,
    SchemaError,
    UnknownRiskError,
    ValidationError,
    VersionConflictError,
)
from .model import LikelihoodLevel, PriorityWeighting, parse_area_ref
from .report import (
    report_json,
    report_markdown,
    risk_score_to_dict,
    what_if_to_dict,
)
from .scoring import WhatIfOverrides, score_risk, what_if
from .store import (
    context_from_dict,
    document_to_dict,
    load_register,
    risk_from_dict,
    risk_to_dict,
    save_register,
    update_context,
    upsert_risk,
    remove_risk,
    utc_now,
)

_STATUS_BY_ERROR = {
    ValidationError: 422,
    DomainError: 422,
    UnknownRiskError: 404,
    VersionConflictError: 409,
    ParseError: 400,
    SchemaError: 400,
}


def _error_response(exc: EidRiskError, status: int) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"errors": [
            {"code": v.code, "message": v.message, "field_path": v.field_path}
            for v in exc.violations()
        ]},
    )


async def _json_body(request: Request) -> dict:
    try:
        data = await request.json()
    except Exception:
        raise ParseError("request body is not valid JSON") from None
    if not isinstance(data, dict):
        raise ParseError("request body must be a JSON object")
    return data


def _actor(request: Request) -> str:
    return request.headers.get("x-actor", "api")


def create_app(register_path: Path | str, ui_dir: Path | str | None = None) -> FastAPI:
    """Build the service around one register file.

    The document is held in memory and re-persisted atomically after each
    mutation; scores are always computed on read, never stored.
    """
    register_path = Path(register_path)
    app = FastAPI(title="eID risk workbench", docs_url=None, redoc_url=None)
    app.state.doc = load_register(register_path)
    app.state.lock = threading.Lock()
    app.state.token = os.environ.get("EIDRISK_TOKEN") or None

    @app.exception_handler(EidRiskError)
    async def _handle_domain(request: Request, exc: EidRiskError):
        status = _STATUS_BY_ERROR.get(type(exc), 422)
        return _error_response(exc, status)

    @app.middleware("http")
    async def _auth(request: Request, call_next):
        token = request.app.state.token
        if token and request.headers.get("authorization") != f"Bearer {token}":
            return JSONResponse(status_code=401, content={"errors": [
                {"code": "unauthorized", "message": "missing or wrong bearer token",
                 "field_path": None}]})
        return await call_next(request)

    def _commit(new_doc) -> None:
        save_register(new_doc, register_path)
        app.state.doc = new_doc

    @app.get("/register")
    async def get_register(audit: bool = False):
        return document_to_dict(app.state.doc, include_audit=audit)

    @app.put("/context")
    async def put_context(request: Request):
        context = context_from_dict(await _json_body(request))
        with app.state.lock:
            new_doc = update_context(app.state.doc, context, _actor(request))
            if new_doc is not app.state.doc:
                _commit(new_doc)
        return document_to_dict(app.state.doc, include_audit=False)["context"]

    @app.post("/risks", status_code=201)
    async def post_risk(request: Request):
        risk = risk_from_dict(await _json_body(request),
                              identified_at_default=utc_now())
        with app.state.lock:
            if any(r.id == risk.id for r in app.state.doc.risks):
                raise VersionConflictError(
                    f"risk '{risk.id}' already exists; update it instead",
                    code="duplicate_risk")
            _commit(upsert_risk(app.state.doc, risk, _actor(request)))
        return risk_to_dict(app.state.doc.risk(risk.id))

    @app.put("/risks/{risk_id}")
    async def put_risk(risk_id: str, request: Request):
        data = await _json_body(request)
        if data.get("id") != risk_id:
            raise ValidationError("body id must match the path id",
                                  field_path="id")
        risk = risk_from_dict(data, identified_at_default=utc_now())
        with app.state.lock:
            app.state.doc.risk(risk_id)
            _commit(upsert_risk(app.state.doc, risk, _actor(request)))
        return risk_to_dict(app.state.doc.risk(risk_id))

    @app.delete("/risks/{risk_id}", status_code=204)
    async def delete_risk(risk_id: str, request: Request):
        with app.state.lock:
            _commit(remove_risk(app.state.doc, risk_id, _actor(request)))
        return Response(status_code=204)

    @app.get("/risks/{risk_id}")
    async def get_risk(risk_id: str):
        return risk_to_dict(app.state.doc.risk(risk_id))

    @app.get("/risks/{risk_id}/score")
    async def get_score(risk_id: str):
        doc = app.state.doc
        return risk_score_to_dict(score_risk(doc.risk(risk_id), doc.context))

    @app.post("/whatif")
    async def post_whatif(request: Request):
        data = await _json_body(request)
        doc = app.state.doc
        risk_id = data.get("risk_id")
        if not isinstance(risk_id, str):
            raise ValidationError("expected a string risk_id", field_path="risk_id")
        risk = doc.risk(risk_id)
        overrides = _parse_overrides(data.get("overrides", {}), doc.context)
        return what_if_to_dict(what_if(risk, doc.context, overrides))

    @app.get("/report")
    async def get_report(format: str = "json"):
        doc = app.state.doc
        if format == "json":
            return report_json(doc)
        if format == "markdown":
            return Response(content=report_markdown(doc), media_type="text/markdown")
        raise ParseError(f"unknown report format '{format}'",
                         code="unknown_format", field_path="format")

    if ui_dir is not None:
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


def _parse_overrides(data, context) -> WhatIfOverrides:
    if not isinstance(data, dict):
        raise ValidationError("expected an object", field_path="overrides")

    values = {}
    for ref, value in (data.get("values") or {}).items():
        area = parse_area_ref(ref)
        if not isinstance(value, int) or isinstance(value, bool):
            raise ValidationError(f"expected an integer value for '{ref}'",
                                  field_path=f"overrides.values.{ref}")
        values[area] = value

    weightings = {}
    for key, ranks in (data.get("weights") or {}).items():
        base = None
        for stakeholder, weighting in context.weightings.items():
            if stakeholder.value == key:
                base = (stakeholder, dict(weighting.weights))
        if base is None:
            raise ValidationError(f"'{key}' is not a stakeholder class",
                                  field_path=f"overrides.weights.{key}")
        stakeholder, merged = base
        if not isinstance(ranks, dict):
            raise ValidationError("expected an object of area ranks",
                                  field_path=f"overrides.weights.{key}")
        for area_ref, rank in ranks.items():
            area = parse_area_ref(f"{key}.{area_ref}")
            if not isinstance(rank, int) or isinstance(rank, bool):
                raise ValidationError(
                    f"expected an integer rank for '{area_ref}'",
                    field_path=f"overrides.weights.{key}.{area_ref}")
            merged[area.name] = rank
        weightings[stakeholder] = PriorityWeighting(stakeholder, merged)

    likelihood = None
    raw_level = data.get("likelihood")
    if raw_level is not None:
        try:
            likelihood = LikelihoodLevel(raw_level)
        except ValueError:
            valid = ", ".join(m.value for m in LikelihoodLevel)
            raise ValidationError(f"'{raw_level}' is not one of: {valid}",
                                  field_path="overrides.likelihood") from None

    return WhatIfOverrides(values=values, weightings=weightings,
                           likelihood_level=likelihood)
