"""HTTP API and shared request handlers.

The FastAPI app under /api/v1 and the CLI call the same handler functions,
so JSON responses and CLI JSON output for equivalent requests are
structurally identical. Handlers are pure apart from an in-memory result
cache keyed by the request's content hash; every response carries that hash
so clients can trace any displayed number back to the producing request.

Status mapping: 400 for malformed documents/requests (schema errors), 422
for well-formed input that fails validation, 500 for everything else.
"""

from __future__ import annotations

import hashlib
import io
import json
import logging
import os
import threading
from dataclasses import replace
from typing import Any, Dict, List, Optional, Union

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, StreamingResponse
from pydantic import BaseModel, Field

from . import __version__
from .economy import (
    compare_specs,
    load_fixture,
    normalize_and_serialize,
    parse_spec,
    render_comparison_text,
    spec_to_document,
    validate_spec,
)
from .errors import (
    DegenerateDistribution,
    ScenarioError,
    SchemaError,
    TokenlabError,
    UnknownPreset,
    UnknownProperty,
)
from .metrics import HolderDistribution, concentration_report, load_holder_snapshot
from .presets import PRESETS, preset, preset_descriptions
from .simulate import report_summary, run_scenario, scenario_from_document
from .voting import PROPERTIES, property_matrix, recommend_mechanism

logger = logging.getLogger("tokenlab")

FIXTURE_NAMES = ("currynomics", "uniswap", "curve", "quadratic_demo")


class RequestError(TokenlabError):
    """Malformed request: maps to HTTP 400 / CLI usage semantics."""


class ValidationFailed(TokenlabError):
    """Well-formed input that fails validation: maps to HTTP 422."""

    def __init__(self, payload: dict):
        self.payload = payload
        super().__init__("validation failed")


def content_hash(payload: Any) -> str:
    """Stable hash of a JSON-compatible request payload."""
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _resolve_spec(value: Union[str, dict]):
    """A spec argument is a bundled fixture name or a document (text/object)."""
    if isinstance(value, str) and value in FIXTURE_NAMES:
        return load_fixture(value)
    return parse_spec(value)


# --- handlers shared by HTTP API and CLI ---------------------------------------


def handle_validate(document: Union[str, dict]) -> dict:
    """Parse and validate a spec document; raises ValidationFailed on errors."""
    spec = parse_spec(document)
    report = validate_spec(spec)
    payload = {
        "name": spec.name,
        "valid": report.valid,
        "findings": [f.to_dict() for f in report.findings],
        "normalized": normalize_and_serialize(spec),
        "content_hash": content_hash({"validate": document}),
    }
    if not report.valid:
        raise ValidationFailed(payload)
    return payload


def handle_metrics(
    entries: Optional[List] = None,
    csv_text: Optional[str] = None,
    top_k: int = 10,
    precision: int = 6,
) -> dict:
    if (entries is None) == (csv_text is None):
        raise RequestError("provide exactly one of 'entries' or 'csv'")
    if csv_text is not None:
        dist = load_holder_snapshot(io.StringIO(csv_text))
    else:
        try:
            dist = HolderDistribution.from_pairs(
                (entry[0], entry[1]) for entry in entries
            )
        except (TypeError, ValueError, IndexError) as exc:
            raise RequestError(f"bad entries: {exc}") from exc
    report = concentration_report(dist, top_k_prefix=top_k, precision=precision)
    payload = report.to_dict()
    payload["content_hash"] = content_hash(
        {"metrics": entries if entries is not None else csv_text,
         "top_k": top_k, "precision": precision}
    )
    return payload


_SIM_CACHE: Dict[str, dict] = {}
_SIM_CACHE_LOCK = threading.Lock()
_SIM_CACHE_LIMIT = 32


def _build_scenario(
    scenario: Optional[Union[str, dict]],
    preset_name: Optional[str],
    spec: Optional[Union[str, dict]],
    epochs: Optional[int],
    seed: Optional[int],
):
    resolved_spec = _resolve_spec(spec) if spec is not None else None
    if preset_name is not None:
        built = preset(preset_name, spec=resolved_spec)
    elif scenario is not None:
        built = scenario_from_document(scenario, spec_override=resolved_spec)
    else:
        raise RequestError("provide a 'scenario' document or a 'preset' name")
    if epochs is not None or seed is not None:
        new_epochs = epochs if epochs is not None else built.epochs
        built = replace(
            built,
            epochs=new_epochs,
            seed=seed if seed is not None else built.seed,
            # shortening the horizon drops out-of-range shocks and proposals
            shocks=tuple(s for s in built.shocks if s.epoch <= new_epochs),
            proposals=tuple(p for p in built.proposals if p.epoch <= new_epochs),
        )
    return built


def handle_simulate(
    scenario: Optional[Union[str, dict]] = None,
    preset_name: Optional[str] = None,
    spec: Optional[Union[str, dict]] = None,
    epochs: Optional[int] = None,
    seed: Optional[int] = None,
    include_distributions: bool = False,
    on_epoch=None,
) -> dict:
    """Run (or replay from cache) a simulation request."""
    request_key = content_hash(
        {
            "scenario": scenario,
            "preset": preset_name,
            "spec": spec,
            "epochs": epochs,
            "seed": seed,
            "include_distributions": include_distributions,
        }
    )
    if on_epoch is None:
        with _SIM_CACHE_LOCK:
            cached = _SIM_CACHE.get(request_key)
        if cached is not None:
            return cached

    built = _build_scenario(scenario, preset_name, spec, epochs, seed)
    spec_report = validate_spec(built.spec)
    if not spec_report.valid:
        raise ValidationFailed(
            {
                "valid": False,
                "findings": [f.to_dict() for f in spec_report.findings],
                "content_hash": request_key,
            }
        )
    report = run_scenario(built, on_epoch=on_epoch)
    payload = {
        "report": report.to_dict(include_distributions=include_distributions),
        "summary": report_summary(report),
        "content_hash": request_key,
    }
    if on_epoch is None:
        with _SIM_CACHE_LOCK:
            if len(_SIM_CACHE) >= _SIM_CACHE_LIMIT:
                _SIM_CACHE.pop(next(iter(_SIM_CACHE)))
            _SIM_CACHE[request_key] = payload
    return payload


def handle_compare(a: Union[str, dict], b: Union[str, dict]) -> dict:
    spec_a, spec_b = _resolve_spec(a), _resolve_spec(b)
    report = compare_specs(spec_a, spec_b)
    return {
        "comparison": report.to_dict(),
        "text": render_comparison_text(report),
        "content_hash": content_hash({"compare": [a, b]}),
    }


def handle_recommend(require: Dict[str, int], prefer: List[str]) -> dict:
    ranked = recommend_mechanism(require, prefer)
    return {
        "require": dict(sorted(require.items())),
        "prefer": list(prefer),
        "candidates": [family.value for family in ranked],
        "no_candidate": not ranked,
        "content_hash": content_hash({"recommend": [require, prefer]}),
    }


def handle_matrix() -> dict:
    matrix = property_matrix()
    return {
        "properties": list(PROPERTIES),
        "scores": {"weak": 0, "partial": 1, "strong": 2},
        "families": matrix.to_dict(),
    }


def handle_presets() -> dict:
    descriptions = preset_descriptions()
    return {
        "presets": [{"name": name, "description": descriptions[name]} for name in PRESETS]
    }


def handle_fixtures() -> dict:
    return {"fixtures": list(FIXTURE_NAMES)}


def handle_fixture(name: str) -> dict:
    if name not in FIXTURE_NAMES:
        raise RequestError(f"unknown fixture {name!r}; available: {', '.join(FIXTURE_NAMES)}")
    spec = load_fixture(name)
    return {
        "name": name,
        "document": spec_to_document(spec),
        "normalized": normalize_and_serialize(spec),
    }


# --- FastAPI app ----------------------------------------------------------------


class ValidateRequest(BaseModel):
    document: Union[str, dict]


class MetricsRequest(BaseModel):
    entries: Optional[List[List[Union[str, int, float]]]] = None
    csv: Optional[str] = None
    top_k: int = Field(default=10, ge=1)
    precision: int = Field(default=6, ge=0, le=18)


class SimulateRequest(BaseModel):
    scenario: Optional[Union[str, dict]] = None
    preset: Optional[str] = None
    spec: Optional[Union[str, dict]] = None
    epochs: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = None
    include_distributions: bool = False


class CompareRequest(BaseModel):
    a: Union[str, dict]
    b: Union[str, dict]


class RecommendRequest(BaseModel):
    require: Dict[str, int] = Field(default_factory=dict)
    prefer: List[str] = Field(default_factory=list)


def create_app() -> FastAPI:
    app = FastAPI(title="tokenlab", version=__version__)

    @app.exception_handler(RequestValidationError)
    async def bad_body(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": "schema", "detail": exc.errors()})

    @app.exception_handler(SchemaError)
    async def schema_error(request: Request, exc: SchemaError):
        return JSONResponse(
            status_code=400,
            content={"error": "schema", "issues": [i.to_dict() for i in exc.issues]},
        )

    @app.exception_handler(RequestError)
    async def request_error(request: Request, exc: RequestError):
        return JSONResponse(status_code=400, content={"error": "request", "detail": str(exc)})

    @app.exception_handler(UnknownPreset)
    async def unknown_preset(request: Request, exc: UnknownPreset):
        return JSONResponse(status_code=400, content={"error": "request", "detail": str(exc)})

    @app.exception_handler(UnknownProperty)
    async def unknown_property(request: Request, exc: UnknownProperty):
        return JSONResponse(status_code=400, content={"error": "request", "detail": str(exc)})

    @app.exception_handler(ScenarioError)
    async def scenario_error(request: Request, exc: ScenarioError):
        return JSONResponse(status_code=400, content={"error": "scenario", "detail": str(exc)})

    @app.exception_handler(DegenerateDistribution)
    async def degenerate(request: Request, exc: DegenerateDistribution):
        return JSONResponse(status_code=422, content={"error": "degenerate", "detail": str(exc)})

    @app.exception_handler(ValidationFailed)
    async def invalid_spec(request: Request, exc: ValidationFailed):
        return JSONResponse(status_code=422, content=exc.payload)

    @app.get("/api/v1/health")
    async def health():
        return {"status": "ok", "version": __version__}

    @app.post("/api/v1/validate")
    async def validate(body: ValidateRequest):
        return handle_validate(body.document)

    @app.post("/api/v1/metrics")
    async def metrics(body: MetricsRequest):
        return handle_metrics(
            entries=body.entries, csv_text=body.csv, top_k=body.top_k, precision=body.precision
        )

    @app.post("/api/v1/simulate")
    async def simulate(body: SimulateRequest, stream: bool = Query(default=False)):
        if not stream:
            return handle_simulate(
                scenario=body.scenario,
                preset_name=body.preset,
                spec=body.spec,
                epochs=body.epochs,
                seed=body.seed,
                include_distributions=body.include_distributions,
            )

        # fail fast with proper status codes before the stream starts
        built = _build_scenario(body.scenario, body.preset, body.spec, body.epochs, body.seed)
        spec_report = validate_spec(built.spec)
        if not spec_report.valid:
            raise ValidationFailed(
                {"valid": False, "findings": [f.to_dict() for f in spec_report.findings]}
            )

        import queue

        updates: "queue.Queue[tuple]" = queue.Queue()

        def worker():
            try:
                payload = handle_simulate(
                    scenario=body.scenario,
                    preset_name=body.preset,
                    spec=body.spec,
                    epochs=body.epochs,
                    seed=body.seed,
                    include_distributions=body.include_distributions,
                    on_epoch=lambda s: updates.put(("epoch", s)),
                )
                updates.put(("done", payload))
            except TokenlabError as exc:
                updates.put(("error", str(exc)))
            except Exception as exc:  # pragma: no cover - defensive
                logger.exception("simulation failed mid-stream")
                updates.put(("error", f"internal error: {exc}"))

        threading.Thread(target=worker, daemon=True).start()

        def generate():
            while True:
                kind, data = updates.get()
                if kind == "epoch":
                    yield json.dumps({"epoch_summary": data}, sort_keys=True) + "\n"
                elif kind == "done":
                    yield json.dumps({"done": True, "result": data}, sort_keys=True) + "\n"
                    return
                else:
                    yield json.dumps({"error": data}, sort_keys=True) + "\n"
                    return

        return StreamingResponse(generate(), media_type="application/x-ndjson")

    @app.post("/api/v1/compare")
    async def compare(body: CompareRequest):
        return handle_compare(body.a, body.b)

    @app.post("/api/v1/recommend")
    async def recommend(body: RecommendRequest):
        return handle_recommend(body.require, body.prefer)

    @app.get("/api/v1/matrix")
    async def matrix():
        return handle_matrix()

    @app.get("/api/v1/presets")
    async def presets():
        return handle_presets()

    @app.get("/api/v1/fixtures")
    async def fixtures():
        return handle_fixtures()

    @app.get("/api/v1/fixtures/{name}")
    async def fixture(name: str):
        return handle_fixture(name)

    return app


def configure_logging():
    level = os.environ.get("TEDM_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))


def serve(bind: str = "127.0.0.1", port: int = 8707):
    """Run the local service; loopback-only by default."""
    import uvicorn

    configure_logging()
    uvicorn.run(create_app(), host=bind, port=port, log_level="info")
