"""JSON-over-HTTP service exposing the engine to the explorer UI.

Endpoints (all under /api): POST /theory, GET /theory/{id}/arguments,
GET /theory/{id}/extensions, POST /theory/{id}/explain, POST
/theory/{id}/challenge, POST /theory/{id}/whatif, GET /schemes. Errors
are returned as {code, message} with 400 for malformed input, 404 for
unknown sessions/targets, 413 for oversized payloads, and 422 when no
sufficient explanation exists.
"""

from __future__ import annotations

import json

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .dispute import DEFAULT_MAX_DEPTH, UtilityWeights
from .errors import (
    InsufficientExplanationError,
    PhaxError,
    TheoryParseError,
    TheoryValidationError,
    UnknownSchemeError,
    UnknownTargetError,
)
from .parser import parse_theory
from .profiles import BUILTIN_PROFILES, UserProfile, profile_from_dict
from .render import TEXT
from .schemes import builtin_schemes
from .session import (
    SessionStore,
    arguments_report,
    explain_report,
    extensions_report,
)

MAX_PAYLOAD_BYTES = 1 << 20  # 1 MiB


class ExplainRequestModel(BaseModel):
    target: str
    profile: str | dict = "clinician"
    weights: dict[str, float] | None = None
    semantics: str = "grounded"
    format: str = TEXT
    max_depth: int = Field(default=DEFAULT_MAX_DEPTH, ge=1, le=12)


class ChallengeRequestModel(BaseModel):
    instance: str
    cq: str
    confidence: float = Field(default=0.6, ge=0.0, le=1.0)
    semantics: str = "grounded"


class WhatifRequestModel(BaseModel):
    disable_premises: list[str] = Field(default_factory=list)
    add_preferences: list[list[str]] = Field(default_factory=list)
    remove_preferences: list[list[str]] = Field(default_factory=list)
    target: str | None = None
    semantics: str = "grounded"
    commit: bool = False


def resolve_profile(spec: str | dict, extra: dict[str, UserProfile] | None = None) -> UserProfile:
    if isinstance(spec, dict):
        return profile_from_dict(spec)
    named = dict(BUILTIN_PROFILES)
    named.update(extra or {})
    if spec in named:
        return named[spec]
    raise UnknownTargetError(f"unknown profile '{spec}'")


def weights_from_overrides(overrides: dict[str, float] | None) -> UtilityWeights:
    values = dict(overrides or {})
    defaults = UtilityWeights()
    return UtilityWeights(
        alpha=values.get("alpha", defaults.alpha),
        beta=values.get("beta", defaults.beta),
        gamma=values.get("gamma", defaults.gamma),
        tau=values.get("tau", defaults.tau),
        epsilon=values.get("epsilon", defaults.epsilon),
    )


def schemes_report() -> dict:
    rows = []
    for scheme in builtin_schemes():
        rows.append(
            {
                "id": scheme.id,
                "variables": [v.name for v in scheme.variables],
                "premises": [str(t) for t in scheme.premise_templates],
                "conclusion": str(scheme.conclusion_template),
                "critical_questions": [
                    {"id": cq.id, "text": cq.question_text}
                    for cq in scheme.critical_questions
                ],
                "audience_templates": dict(scheme.audience_text_templates),
            }
        )
    return {"schemes": rows}


def _error(status: int, code: str, message: str, **extra) -> JSONResponse:
    payload = {"code": code, "message": message}
    payload.update(extra)
    return JSONResponse(status_code=status, content=payload)


def create_app(store: SessionStore | None = None, profiles: dict[str, UserProfile] | None = None) -> FastAPI:
    store = store or SessionStore()
    extra_profiles = profiles or {}
    app = FastAPI(title="phax", docs_url=None, redoc_url=None)
    app.state.store = store
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(InsufficientExplanationError)
    async def _insufficient(request: Request, exc: InsufficientExplanationError):
        return _error(
            422,
            "insufficient",
            str(exc),
            sigma_full=exc.sigma_full,
            tau=exc.tau,
        )

    @app.exception_handler(UnknownTargetError)
    async def _unknown_target(request: Request, exc: UnknownTargetError):
        return _error(404, "unknown_target", str(exc))

    @app.exception_handler(UnknownSchemeError)
    async def _unknown_scheme(request: Request, exc: UnknownSchemeError):
        return _error(404, "unknown_scheme", str(exc))

    @app.exception_handler(TheoryValidationError)
    async def _invalid_theory(request: Request, exc: TheoryValidationError):
        return _error(
            400,
            "invalid_theory",
            str(exc),
            diagnostics=[
                {
                    "line": d.line,
                    "col": d.col,
                    "severity": d.severity,
                    "message": d.message,
                }
                for d in exc.diagnostics
            ],
        )

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return _error(400, "bad_request", str(exc))

    @app.exception_handler(PhaxError)
    async def _phax_error(request: Request, exc: PhaxError):
        return _error(400, "engine_error", str(exc))

    @app.middleware("http")
    async def payload_cap(request: Request, call_next):
        length = request.headers.get("content-length")
        if length and int(length) > MAX_PAYLOAD_BYTES:
            return _error(413, "payload_too_large", "payload exceeds 1 MiB")
        return await call_next(request)

    @app.post("/api/theory", status_code=201)
    async def create_theory(request: Request):
        raw = await request.body()
        if len(raw) > MAX_PAYLOAD_BYTES:
            return _error(413, "payload_too_large", "payload exceeds 1 MiB")
        source = raw.decode("utf-8", errors="replace")
        content_type = request.headers.get("content-type", "")
        if "application/json" in content_type:
            try:
                data = json.loads(source)
            except json.JSONDecodeError:
                return _error(400, "bad_request", "malformed JSON body")
            if not isinstance(data, dict) or "source" not in data:
                return _error(400, "bad_request", "JSON body must carry a 'source' field")
            source = str(data["source"])
        result = parse_theory(source)
        if not result.ok:
            return _error(
                400,
                "parse_error",
                "theory did not parse",
                diagnostics=[
                    {
                        "line": d.line,
                        "col": d.col,
                        "severity": d.severity,
                        "message": d.message,
                    }
                    for d in result.diagnostics
                ],
            )
        session = store.create(result.theory)
        return {
            "id": session.id,
            "name": result.theory.name,
            "premises": len(result.theory.premises),
            "rules": len(result.theory.rules),
        }

    @app.get("/api/theory/{session_id}/arguments")
    async def list_arguments(session_id: str):
        session = store.get(session_id)
        return arguments_report(session.derived())

    @app.get("/api/theory/{session_id}/extensions")
    async def list_extensions(session_id: str, semantics: str = "grounded"):
        session = store.get(session_id)
        return extensions_report(session.derived(), semantics)

    @app.post("/api/theory/{session_id}/explain")
    async def explain(session_id: str, body: ExplainRequestModel):
        session = store.get(session_id)
        profile = resolve_profile(body.profile, extra_profiles)
        weights = weights_from_overrides(body.weights)
        return explain_report(
            session.derived(),
            target=body.target,
            profile=profile,
            weights=weights,
            semantics=body.semantics,
            fmt=body.format,
            max_depth=body.max_depth,
        )

    @app.post("/api/theory/{session_id}/challenge")
    async def challenge(session_id: str, body: ChallengeRequestModel):
        session = store.get(session_id)
        report = session.challenge(
            body.instance, body.cq, body.confidence, body.semantics
        )
        store.snapshot(session)
        return report

    @app.post("/api/theory/{session_id}/whatif")
    async def whatif(session_id: str, body: WhatifRequestModel):
        session = store.get(session_id)
        for pair in body.add_preferences + body.remove_preferences:
            if len(pair) != 2:
                raise ValueError("preference edits must be [higher, lower] pairs")
        report = session.whatif(
            disable_premises=body.disable_premises,
            add_preferences=[tuple(p) for p in body.add_preferences],
            remove_preferences=[tuple(p) for p in body.remove_preferences],
            target=body.target,
            semantics=body.semantics,
            commit=body.commit,
        )
        if body.commit:
            store.snapshot(session)
        return report

    @app.get("/api/schemes")
    async def schemes():
        return schemes_report()

    return app
