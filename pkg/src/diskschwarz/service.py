"""FastAPI service exposing the toolkit operations.

Run with:  uvicorn diskschwarz.service:app

Each endpoint accepts the request model from ``diskschwarz.api`` and returns
a Report. Input problems (bad expressions, points outside domains) map to
HTTP 400; numerical failures map to HTTP 500.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import __version__
from .api import (
    CriterionRequest,
    GalleryRequest,
    LiftRequest,
    NormRequest,
    OdeRequest,
    Report,
    SchwarzianRequest,
    ShearRequest,
    ValenceRequest,
    run_criterion,
    run_gallery_report,
    run_lift,
    run_norm,
    run_ode,
    run_schwarzian,
    run_shear,
    run_valence,
)
from .errors import InputError, NumericError

app = FastAPI(
    title="diskschwarz",
    description="Schwarzian-derivative univalence and valence analysis on the unit disk",
    version=__version__,
)


def _guarded(handler, request):
    try:
        return handler(request)
    except InputError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    except NumericError as exc:
        raise HTTPException(status_code=500, detail=str(exc)) from exc


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/schwarzian", response_model=Report)
def schwarzian_endpoint(request: SchwarzianRequest) -> Report:
    return _guarded(run_schwarzian, request)


@app.post("/norm", response_model=Report)
def norm_endpoint(request: NormRequest) -> Report:
    return _guarded(run_norm, request)


@app.post("/criterion", response_model=Report)
def criterion_endpoint(request: CriterionRequest) -> Report:
    return _guarded(run_criterion, request)


@app.post("/valence", response_model=Report)
def valence_endpoint(request: ValenceRequest) -> Report:
    return _guarded(run_valence, request)


@app.post("/ode", response_model=Report)
def ode_endpoint(request: OdeRequest) -> Report:
    return _guarded(run_ode, request)


@app.post("/lift", response_model=Report)
def lift_endpoint(request: LiftRequest) -> Report:
    return _guarded(run_lift, request)


@app.post("/shear", response_model=Report)
def shear_endpoint(request: ShearRequest) -> Report:
    return _guarded(run_shear, request)


@app.post("/gallery", response_model=Report)
def gallery_endpoint(request: GalleryRequest) -> Report:
    return _guarded(run_gallery_report, request)
