"""JSON webservice exposing relatedness queries and dataset correlation.

Two main endpoints mirror the two components of the system: POST
``/relatedness`` scores a main term against a target set, POST
``/correlation`` evaluates a model against a gold dataset. Both accept GET
aliases with URL-encoded parameters for curl-ability. Discovery endpoints:
``/models``, ``/languages``, ``/health`` and ``/schema`` (OpenAPI document).

All error responses carry a machine-readable ``{"code", "message"}`` body.
Request handling is fully concurrent: loaded models are immutable and the
registry cache serializes its own mutation.
"""

from __future__ import annotations

import os
import threading
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, RedirectResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field, field_validator

from .corpus import SUPPORTED_LANGUAGES
from .errors import (
    ConfigError,
    CoverageError,
    DatasetError,
    TermNotFoundError,
    UndefinedCorrelationError,
    UndefinedSimilarityError,
)
from .evaluation import DATASET_NAMES, OOV_POLICIES, evaluate, load_dataset
from .models import MODEL_KINDS
from .registry import DEFAULT_CACHE_CAPACITY, ModelCache, default_model_dir, list_models
from .similarity import Measure, relatedness_to_targets

PORT_ENV = "DINFRA_PORT"
DEFAULT_PORT = 8008

DEFAULT_DATASETS_DIR = "datasets"

MAX_TARGETS = 100


class ApiError(Exception):
    """Error with a wire code and an HTTP status."""

    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _bad_request(message: str) -> ApiError:
    return ApiError(400, "bad_request", message)


class RelatednessRequest(BaseModel):
    main_term: str = Field(min_length=1)
    target_set: list[str] = Field(min_length=1, max_length=MAX_TARGETS)
    language: str
    measure: str
    model_kind: str

    @field_validator("language")
    @classmethod
    def _language_supported(cls, value):
        if value not in SUPPORTED_LANGUAGES:
            raise ValueError(f"unsupported language {value!r}")
        return value

    @field_validator("measure")
    @classmethod
    def _measure_known(cls, value):
        Measure.parse(value)
        return value.strip().lower()

    @field_validator("model_kind")
    @classmethod
    def _kind_known(cls, value):
        if value not in MODEL_KINDS:
            raise ValueError(f"unknown model kind {value!r}")
        return value

    @field_validator("target_set")
    @classmethod
    def _targets_non_empty(cls, value):
        if any(not t.strip() for t in value):
            raise ValueError("target terms must be non-empty")
        return value


class CorrelationRequest(BaseModel):
    dataset: str
    language: str
    measure: str
    model_kind: str
    oov_policy: str = "skip"

    @field_validator("dataset")
    @classmethod
    def _dataset_known(cls, value):
        if value.lower() not in DATASET_NAMES:
            raise ValueError(f"unknown dataset {value!r}")
        return value.lower()

    _language_supported = field_validator("language")(
        RelatednessRequest._language_supported.__func__  # type: ignore[attr-defined]
    )
    _measure_known = field_validator("measure")(
        RelatednessRequest._measure_known.__func__  # type: ignore[attr-defined]
    )
    _kind_known = field_validator("model_kind")(
        RelatednessRequest._kind_known.__func__  # type: ignore[attr-defined]
    )

    @field_validator("oov_policy")
    @classmethod
    def _policy_known(cls, value):
        if value not in OOV_POLICIES:
            raise ValueError(f"unknown OOV policy {value!r}")
        return value


def create_app(
    model_dir: str | Path | None = None,
    datasets_dir: str | Path | None = None,
    ui_dir: str | Path | None = None,
    cache_capacity: int = DEFAULT_CACHE_CAPACITY,
) -> FastAPI:
    """Build the service around a model registry root and a datasets directory."""
    root = Path(model_dir) if model_dir is not None else default_model_dir()
    datasets = Path(datasets_dir) if datasets_dir is not None else Path(DEFAULT_DATASETS_DIR)
    cache = ModelCache(root, capacity=cache_capacity)
    correlation_cache: dict[tuple, dict] = {}
    correlation_lock = threading.Lock()

    app = FastAPI(title="dinfra", version="0.1.0", openapi_url="/schema")

    @app.exception_handler(ApiError)
    async def _api_error(_req: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status, content={"code": exc.code, "message": exc.message}
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_req: Request, exc: RequestValidationError):
        detail = "; ".join(
            f"{'.'.join(str(loc) for loc in err['loc'])}: {err['msg']}"
            for err in exc.errors()
        )
        return JSONResponse(
            status_code=400, content={"code": "bad_request", "message": detail}
        )

    def get_model(language: str, kind: str):
        hit = cache.get(language, kind)
        if hit is None:
            raise ApiError(
                404,
                "model_not_found",
                f"no {kind} model registered for language {language!r}",
            )
        return hit

    def run_relatedness(request: RelatednessRequest) -> dict:
        _descriptor, model = get_model(request.language, request.model_kind)
        measure = Measure.parse(request.measure)
        try:
            results = relatedness_to_targets(
                model, request.main_term, request.target_set, measure
            )
        except TermNotFoundError as exc:
            raise ApiError(422, "term_not_found", str(exc)) from exc
        except UndefinedSimilarityError as exc:
            raise ApiError(422, "undefined_similarity", str(exc)) from exc
        return {
            "main_term": request.main_term,
            "language": request.language,
            "measure": measure.value,
            "model_kind": request.model_kind,
            "results": results,
        }

    def run_correlation(request: CorrelationRequest) -> tuple[dict, bool]:
        descriptor, model = get_model(request.language, request.model_kind)
        key = (
            request.dataset,
            request.language,
            request.measure,
            descriptor.fingerprint,
            request.oov_policy,
        )
        with correlation_lock:
            cached = correlation_cache.get(key)
        if cached is not None:
            return cached, True
        try:
            dataset = load_dataset(request.dataset, request.language, datasets)
        except FileNotFoundError as exc:
            raise ApiError(404, "dataset_not_found", str(exc)) from exc
        except DatasetError as exc:
            raise ApiError(500, "dataset_invalid", str(exc)) from exc
        try:
            result = evaluate(
                model, dataset, Measure.parse(request.measure), oov_policy=request.oov_policy
            )
        except CoverageError as exc:
            raise ApiError(422, "insufficient_coverage", str(exc)) from exc
        except (UndefinedCorrelationError, ConfigError) as exc:
            raise ApiError(422, "undefined_correlation", str(exc)) from exc
        body = {
            "rho": result.rho,
            "n_scored": result.n_scored,
            "n_skipped": result.n_skipped,
            "dataset": request.dataset,
            "language": request.language,
            "measure": request.measure,
            "model_kind": request.model_kind,
            "oov_policy": request.oov_policy,
        }
        with correlation_lock:
            correlation_cache[key] = body
        return body, False

    @app.post("/relatedness")
    async def relatedness_endpoint(request: RelatednessRequest):
        return JSONResponse(run_relatedness(request))

    @app.get("/relatedness")
    async def relatedness_get(
        main_term: str,
        targets: str,
        language: str,
        measure: str = "cosine",
        model_kind: str = "esa",
    ):
        target_set = [t for t in (part.strip() for part in targets.split(",")) if t]
        try:
            request = RelatednessRequest(
                main_term=main_term,
                target_set=target_set,
                language=language,
                measure=measure,
                model_kind=model_kind,
            )
        except ValueError as exc:
            raise _bad_request(str(exc)) from exc
        return JSONResponse(run_relatedness(request))

    @app.post("/correlation")
    async def correlation_endpoint(request: CorrelationRequest):
        body, from_cache = run_correlation(request)
        return JSONResponse(body, headers={"X-Cache": "hit" if from_cache else "miss"})

    @app.get("/correlation")
    async def correlation_get(
        dataset: str,
        language: str,
        measure: str = "cosine",
        model_kind: str = "esa",
        oov_policy: str = "skip",
    ):
        try:
            request = CorrelationRequest(
                dataset=dataset,
                language=language,
                measure=measure,
                model_kind=model_kind,
                oov_policy=oov_policy,
            )
        except ValueError as exc:
            raise _bad_request(str(exc)) from exc
        body, from_cache = run_correlation(request)
        return JSONResponse(body, headers={"X-Cache": "hit" if from_cache else "miss"})

    @app.get("/models")
    async def models_endpoint(
        language: Optional[str] = Query(default=None),
        kind: Optional[str] = Query(default=None),
    ):
        entries = list_models(root, language=language, kind=kind)
        return JSONResponse([entry.to_dict() for entry in entries])

    @app.get("/languages")
    async def languages_endpoint():
        return JSONResponse(list(SUPPORTED_LANGUAGES))

    @app.get("/health")
    async def health_endpoint():
        return JSONResponse({"status": "ok", "loaded_models": cache.loaded_count()})

    ui_path = Path(ui_dir) if ui_dir is not None else Path("frontend") / "dist"
    if ui_path.is_dir():
        app.mount("/ui", StaticFiles(directory=ui_path, html=True), name="ui")

        @app.get("/")
        async def root_redirect():
            return RedirectResponse("/ui/")

    return app


def serve(
    model_dir: str | Path | None = None,
    datasets_dir: str | Path | None = None,
    ui_dir: str | Path | None = None,
    host: str = "0.0.0.0",
    port: int | None = None,
):
    """Run the service until interrupted. Raises OSError if the port is taken."""
    import uvicorn

    if port is None:
        port = int(os.environ.get(PORT_ENV, DEFAULT_PORT))
    app = create_app(model_dir=model_dir, datasets_dir=datasets_dir, ui_dir=ui_dir)
    try:
        uvicorn.run(app, host=host, port=port, log_level="info")
    except SystemExit as exc:
        # uvicorn signals startup failure (e.g. port already bound) this way.
        if exc.code:
            raise ConfigError(
                f"service failed to start on {host}:{port} (port in use?)"
            ) from exc
