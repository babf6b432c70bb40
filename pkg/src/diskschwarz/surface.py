"""Minimal-surface lifts of harmonic maps and the horizontal shear.

A harmonic map h + conj(g) whose dilatation is q^2 lifts to the surface

    U = Re f,  V = Im f,  W(z) = 2 Im integral of q h' from z0 to z,

using that sqrt(h' g') = q h' under the dilatation hypothesis, so no square
root branch needs tracking. The conformal factor is e^sigma = |h'| + |g'| and
the Gauss curvature K = -4 |q'|^2 / (|h'|^2 (1 + |q|^2)^4) <= 0.

Folding is allowed: nothing here requires the planar map to be locally
univalent, only h' != 0 where curvature is evaluated.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import InputError, NumericError, DomainError, ToolkitError
from .expr import CallableMap, JetEvaluable, PrimitiveMap
from .jet import Jet3, jet_mul
from .quadrature import integrate_segment
from .schwarzian import HarmonicMap

W_ABS_TOL = 1e-10


@dataclass(frozen=True)
class LiftSample:
    z: complex
    U: float
    V: float
    W: float
    sigma: float
    K: float


def lift(f: HarmonicMap, z: complex, basepoint: complex | None = None) -> LiftSample:
    """Surface point over z, with the height integrated from ``basepoint``
    (the map's own basepoint when omitted)."""
    z = complex(z)
    z0 = f.basepoint if basepoint is None else complex(basepoint)
    planar = f.value(z)
    w = 2.0 * integrate_segment(
        lambda s: f.q.eval_jet(s).f0 * f.h.prime_jet(s).f0, z0, z, abs_tol=W_ABS_TOL
    ).imag
    return LiftSample(
        z=z,
        U=planar.real,
        V=planar.imag,
        W=w,
        sigma=f.sigma(z),
        K=gauss_curvature(f, z),
    )


def gauss_curvature(f: HarmonicMap, z: complex) -> float:
    """Gauss curvature of the lifted surface at the point over z."""
    hp = f.h.prime_jet(z)
    if hp.f0 == 0:
        raise DomainError(f"Gauss curvature needs h'(z) != 0 at z = {z}")
    qj = f.q.eval_jet(z)
    den = (1.0 + abs(qj.f0) ** 2) ** 4
    return -4.0 * abs(qj.f1) ** 2 / (abs(hp.f0) ** 2 * den)


# ---------------------------------------------------------------------------
# Horizontal shear


def shear(phi: JetEvaluable, q: JetEvaluable) -> HarmonicMap:
    """Harmonic shear of phi in the horizontal direction with dilatation q^2:
    h' = phi'/(1 - q^2), g' = q^2 phi'/(1 - q^2), normalized by h(0) = phi(0)
    and g(0) = 0 so that h - g = phi."""
    radius = min(phi.domain_radius, q.domain_radius)

    def h_prime(z: complex) -> Jet3:
        qj = q.eval_jet(z)
        if abs(qj.f0) >= 1.0:
            raise DomainError(
                f"shear requires |q(z)| < 1; got |q({z})| = {abs(qj.f0)}"
            )
        return phi.prime_jet(z) / (1.0 - jet_mul(qj, qj))

    h = PrimitiveMap(
        integrand=CallableMap(h_prime, radius, "h'"),
        basepoint=0j,
        base_value=phi.eval_jet(0j).f0,
        domain_radius=radius,
        label="shear h",
    )
    return HarmonicMap(h=h, q=q)


# ---------------------------------------------------------------------------
# Meshes


@dataclass(frozen=True)
class SurfaceMesh:
    vertices: tuple[tuple[float, float, float], ...]
    faces: tuple[tuple[int, int, int], ...]
    curvature: tuple[float, ...]


def build_mesh(f: HarmonicMap, r_max: float, n_r: int, n_theta: int) -> SurfaceMesh:
    """Lift samples on the polar grid r in {r_max (i+1)/n_r}, theta uniform;
    vertices r-major, two triangles per grid cell (watertight in theta)."""
    if n_r < 2 or n_theta < 3:
        raise InputError(f"mesh needs n_r >= 2 and n_theta >= 3, got {n_r} x {n_theta}")
    if r_max <= 0:
        raise InputError(f"r_max must be positive, got {r_max}")
    vertices: list[tuple[float, float, float]] = []
    curvature: list[float] = []
    for i in range(n_r):
        r = r_max * (i + 1) / n_r
        for j in range(n_theta):
            theta = 2.0 * math.pi * j / n_theta
            z = r * cmath.exp(1j * theta)
            try:
                s = lift(f, z)
            except ToolkitError as exc:
                kind = DomainError if isinstance(exc, InputError) else NumericError
                raise kind(
                    f"mesh vertex (r = {r}, theta = {theta}): {exc}"
                ) from exc
            vertices.append((s.U, s.V, s.W))
            curvature.append(s.K)
    faces: list[tuple[int, int, int]] = []
    for i in range(n_r - 1):
        for j in range(n_theta):
            a = i * n_theta + j
            b = i * n_theta + (j + 1) % n_theta
            c = (i + 1) * n_theta + j
            d = (i + 1) * n_theta + (j + 1) % n_theta
            faces.append((a, b, c))
            faces.append((b, d, c))
    return SurfaceMesh(tuple(vertices), tuple(faces), tuple(curvature))


def mesh_to_obj(mesh: SurfaceMesh) -> str:
    """Wavefront-style text: `v U V W` lines then 1-based `f i j k` lines."""
    lines = [
        f"v {repr(float(u))} {repr(float(v))} {repr(float(w))}"
        for u, v, w in mesh.vertices
    ]
    lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in mesh.faces]
    return "\n".join(lines) + "\n"


def curvature_to_csv(mesh: SurfaceMesh) -> str:
    """Sidecar CSV with per-vertex curvature, 1-based indices matching the mesh."""
    lines = ["index,K"]
    lines += [f"{i + 1},{repr(float(k))}" for i, k in enumerate(mesh.curvature)]
    return "\n".join(lines) + "\n"
