"""Request/response models and operation handlers.

The FastAPI service exposes these handlers over HTTP; the CLI calls them
in-process. Reports serialize deterministically: keys sorted, complex numbers
as {"re": ..., "im": ...}, grids as {"kind": "polar", "depth": ...}, floats
via repr. Identical inputs always produce byte-identical report text.
"""

from __future__ import annotations

import json
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from . import __version__
from .criteria import check_bound, count_valence
from .errors import InputError
from .expr import AnalyticMap, analytic_map
from .gallery import case_names, run_gallery
from .nehari import NehariFunction, first_zero, hyperbolic_zero_spacing, make_weight
from .hyperbolic import hyp_distance
from .schwarzian import (
    HarmonicMap,
    curvature_term,
    norm_converged,
    norm_history,
    schwarzian_harmonic,
    schwarzian_of,
)
from .surface import build_mesh, curvature_to_csv, lift, mesh_to_obj, shear


class ComplexValue(BaseModel):
    model_config = ConfigDict(extra="forbid")
    re: float
    im: float = 0.0

    def to_complex(self) -> complex:
        return complex(self.re, self.im)

    @classmethod
    def of(cls, z: complex) -> "ComplexValue":
        z = complex(z)
        return cls(re=z.real, im=z.imag)


def cplx(z: complex) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


class Report(BaseModel):
    model_config = ConfigDict(extra="forbid")
    command: str
    inputs: dict
    results: dict
    exclusions: list = Field(default_factory=list)
    version: str = __version__


def render_report(report: Report) -> str:
    """Canonical report text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(report.model_dump(), sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Map construction shared by several handlers


class MapSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    f: Optional[str] = None
    h: Optional[str] = None
    q: Optional[str] = None
    basepoint: Optional[ComplexValue] = None


def _build_map(spec: "MapSpec") -> Union[AnalyticMap, HarmonicMap]:
    if spec.f is not None:
        if spec.h is not None or spec.q is not None:
            raise InputError("give either --f or the pair --h/--q, not both")
        return analytic_map(spec.f)
    if spec.h is not None and spec.q is not None:
        basepoint = spec.basepoint.to_complex() if spec.basepoint else 0j
        return HarmonicMap(
            h=analytic_map(spec.h), q=analytic_map(spec.q), basepoint=basepoint
        )
    raise InputError("an analytic map needs --f; a harmonic map needs both --h and --q")


def _echo_map(spec: "MapSpec") -> dict:
    echo: dict = {}
    if spec.f is not None:
        echo["f"] = spec.f
    if spec.h is not None:
        echo["h"] = spec.h
    if spec.q is not None:
        echo["q"] = spec.q
    if spec.basepoint is not None:
        echo["basepoint"] = cplx(spec.basepoint.to_complex())
    return echo


# ---------------------------------------------------------------------------
# schwarzian


class SchwarzianRequest(MapSpec):
    at: ComplexValue


def run_schwarzian(req: SchwarzianRequest) -> Report:
    target = _build_map(req)
    z = req.at.to_complex()
    if isinstance(target, HarmonicMap):
        s = schwarzian_harmonic(target, z)
        curv = curvature_term(target, z)
        results = {
            "schwarzian": cplx(s),
            "curvature_term": curv,
            "criterion_lhs": abs(s) + curv,
            "sigma": target.sigma(z),
        }
    else:
        results = {"schwarzian": cplx(schwarzian_of(target, z))}
    return Report(
        command="schwarzian",
        inputs={**_echo_map(req), "at": cplx(z)},
        results=results,
    )


# ---------------------------------------------------------------------------
# norm


class NormRequest(MapSpec):
    depth: int = 12


def run_norm(req: NormRequest) -> Report:
    target = _build_map(req)
    if isinstance(target, HarmonicMap):
        sf = lambda z: schwarzian_harmonic(target, z)  # noqa: E731
    else:
        sf = lambda z: schwarzian_of(target, z)  # noqa: E731
    history = norm_history(sf, req.depth)
    final = history[-1]
    return Report(
        command="norm",
        inputs={**_echo_map(req), "grid": {"kind": "polar", "depth": req.depth}},
        results={
            "lower": final.lower,
            "grid_depth": final.grid_depth,
            "sup_point": cplx(final.sup_point),
            "converged": norm_converged(history),
            "history": [
                {"depth": h.grid_depth, "lower": h.lower} for h in history
            ],
        },
        exclusions=[cplx(z) for z in final.excluded],
    )


# ---------------------------------------------------------------------------
# criterion


class CriterionRequest(MapSpec):
    p: str = "classical"
    C: Optional[float] = None
    depth: int = 8


def run_criterion(req: CriterionRequest) -> Report:
    target = _build_map(req)
    weight = make_weight(req.p)
    verdict = check_bound(target, weight, C=req.C, grid_depth=req.depth)
    results = {
        "minimal_C": verdict.minimal_C,
        "classical_C": verdict.classical_C,
        "classification": verdict.classification,
        "mu_used": verdict.mu_used,
        "separation_hyperbolic": verdict.separation_hyperbolic,
        "separation_euclidean": verdict.separation_euclidean,
        "sup_point": cplx(verdict.sup_point),
        "details": verdict.details,
    }
    return Report(
        command="criterion",
        inputs={
            **_echo_map(req),
            "p": req.p,
            "C": req.C,
            "grid": {"kind": "polar", "depth": req.depth},
        },
        results=results,
        exclusions=[cplx(z) for z in verdict.excluded],
    )


# ---------------------------------------------------------------------------
# valence


class ValenceRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    f: str
    w: ComplexValue
    r: float


def run_valence(req: ValenceRequest) -> Report:
    target = analytic_map(req.f)
    result = count_valence(target, req.w.to_complex(), req.r)
    return Report(
        command="valence",
        inputs={"f": req.f, "w": cplx(result.w), "r": result.r},
        results={
            "count": result.count,
            "residual": result.residual,
            "contour_points": result.contour_points,
        },
    )


# ---------------------------------------------------------------------------
# ode


class OdeRequest(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)
    p: str
    delta: Optional[float] = None
    from_: float = Field(default=0.0, alias="from")


def run_ode(req: OdeRequest) -> Report:
    weight: NehariFunction = make_weight(req.p)
    zero = first_zero(weight, req.from_)
    results: dict = {
        "mu": weight.mu,
        "mu_method": weight.mu_method,
        "certificate": weight.certificate,
        "first_zero": zero,
    }
    if req.delta is not None:
        spacing = hyperbolic_zero_spacing(req.delta)
        scaled = 1.0 + req.delta**2

        def comparison(x: float) -> float:
            d = 1.0 - x * x
            return scaled / (d * d)

        comparison_zero = first_zero(comparison, req.from_)
        results["comparison"] = {
            "delta": req.delta,
            "hyperbolic_spacing": spacing.hyperbolic,
            "euclidean_zero": spacing.euclidean_zero,
            "first_zero": comparison_zero,
            "zero_hyperbolic_distance": (
                None
                if comparison_zero is None
                else hyp_distance(req.from_, comparison_zero)
            ),
        }
    return Report(
        command="ode",
        inputs={"p": req.p, "delta": req.delta, "from": req.from_},
        results=results,
    )


# ---------------------------------------------------------------------------
# lift


class MeshSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")
    r_max: float = 0.9
    n_r: int = 24
    n_theta: int = 49


class LiftRequest(MapSpec):
    at: ComplexValue
    mesh: Optional[MeshSpec] = None


def run_lift(req: LiftRequest) -> Report:
    target = _build_map(req)
    if not isinstance(target, HarmonicMap):
        raise InputError("lift needs a harmonic map: give --h and --q")
    sample = lift(target, req.at.to_complex())
    results: dict = {
        "U": sample.U,
        "V": sample.V,
        "W": sample.W,
        "sigma": sample.sigma,
        "K": sample.K,
    }
    inputs = {**_echo_map(req), "at": cplx(req.at.to_complex())}
    if req.mesh is not None:
        mesh = build_mesh(target, req.mesh.r_max, req.mesh.n_r, req.mesh.n_theta)
        results["mesh"] = {
            "vertices": len(mesh.vertices),
            "faces": len(mesh.faces),
            "obj": mesh_to_obj(mesh),
            "curvature_csv": curvature_to_csv(mesh),
        }
        inputs["mesh"] = {
            "r_max": req.mesh.r_max,
            "n_r": req.mesh.n_r,
            "n_theta": req.mesh.n_theta,
        }
    return Report(command="lift", inputs=inputs, results=results)


# ---------------------------------------------------------------------------
# shear


class ShearRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    phi: str
    q: str
    at: ComplexValue = Field(default_factory=lambda: ComplexValue(re=0.5))


def run_shear(req: ShearRequest) -> Report:
    phi = analytic_map(req.phi)
    q = analytic_map(req.q)
    sheared = shear(phi, q)
    z = req.at.to_complex()
    h_val = sheared.h.eval_jet(z).f0
    g_val = sheared.g.eval_jet(z).f0
    phi_val = phi.eval_jet(z).f0
    hp = sheared.h.prime_jet(z).f0
    gp = sheared.g_prime_jet(z).f0
    q_val = q.eval_jet(z).f0
    return Report(
        command="shear",
        inputs={"phi": req.phi, "q": req.q, "at": cplx(z)},
        results={
            "h": cplx(h_val),
            "g": cplx(g_val),
            "phi": cplx(phi_val),
            "h_minus_g_residual": abs(h_val - g_val - phi_val),
            "dilatation_residual": abs(gp / hp - q_val * q_val),
            "schwarzian": cplx(schwarzian_harmonic(sheared, z)),
        },
    )


# ---------------------------------------------------------------------------
# gallery


class GalleryRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    only: Optional[str] = None
    delta: Optional[float] = None


def run_gallery_report(req: GalleryRequest) -> Report:
    cases = run_gallery(only=req.only, delta=req.delta)
    payload = []
    for case in cases:
        payload.append(
            {
                "name": case.name,
                "passed": case.passed,
                "checks": [
                    {
                        "label": c.label,
                        "residual": c.residual,
                        "tolerance": c.tolerance,
                        "passed": c.passed,
                        "value": c.value,
                    }
                    for c in case.checks
                ],
            }
        )
    return Report(
        command="gallery",
        inputs={"only": req.only, "delta": req.delta, "available": list(case_names())},
        results={"cases": payload, "passed": all(c.passed for c in cases)},
    )
