"""Schwarzian operators and the hyperbolic norm.

Covers the classical Schwarzian S f = f'''/f' - (3/2)(f''/f')^2 of an
analytic map, its extension to harmonic maps h + conj(g) whose dilatation is
the square q^2 of an analytic function, the Ahlfors Schwarzian S1 of space
curves, and a grid-based lower-bound estimator for the hyperbolic norm
sup (1-|z|^2)^2 |S f(z)|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, LocalUnivalenceError, NumericError
from .expr import CallableMap, JetEvaluable, PrimitiveMap
from .jet import Jet3, jet_mul


def schwarzian_analytic(j: Jet3) -> complex:
    """Schwarzian from a third-order jet; requires a nonvanishing derivative."""
    if j.f1 == 0:
        raise LocalUnivalenceError(
            f"Schwarzian undefined: derivative vanishes (jet value {j.f0})"
        )
    ratio = j.f2 / j.f1
    return j.f3 / j.f1 - 1.5 * ratio * ratio


def _schwarzian_from_prime(pj: Jet3) -> complex:
    # pj holds (f', f'', f''') in entries f0..f2.
    if pj.f0 == 0:
        raise LocalUnivalenceError("Schwarzian undefined: derivative vanishes")
    ratio = pj.f1 / pj.f0
    return pj.f2 / pj.f0 - 1.5 * ratio * ratio


def schwarzian_of(f: JetEvaluable, z: complex) -> complex:
    """Schwarzian of an analytic map at z, via its derivative jet (which for
    primitive-defined maps avoids the value quadrature)."""
    return _schwarzian_from_prime(f.prime_jet(z))


@dataclass(frozen=True)
class HarmonicMap:
    """Harmonic map h + conj(g) specified by its analytic part h and the
    square root q of its dilatation, so g' = q^2 h'.

    g itself is recovered by integration from ``basepoint``, where it takes
    the value ``g_base_value``; the same basepoint anchors the surface lift.
    """

    h: JetEvaluable
    q: JetEvaluable
    basepoint: complex = 0j
    g_base_value: complex = 0j

    @property
    def domain_radius(self) -> float:
        return min(self.h.domain_radius, self.q.domain_radius)

    def g_prime_jet(self, z: complex) -> Jet3:
        """Jet of g' = q^2 h', valid to order two."""
        qj = self.q.eval_jet(z)
        return jet_mul(jet_mul(qj, qj), self.h.prime_jet(z))

    @cached_property
    def g(self) -> PrimitiveMap:
        return PrimitiveMap(
            integrand=CallableMap(self.g_prime_jet, self.domain_radius, "g'"),
            basepoint=self.basepoint,
            base_value=self.g_base_value,
            domain_radius=self.domain_radius,
            label="g",
        )

    def value(self, z: complex) -> complex:
        """f(z) = h(z) + conj(g(z))."""
        return self.h.eval_jet(z).f0 + self.g.eval_jet(z).f0.conjugate()

    def sigma(self, z: complex) -> float:
        """log(|h'| + |g'|), the log conformal factor of the lift."""
        hp = self.h.prime_jet(z).f0
        gp = self.g_prime_jet(z).f0
        scale = abs(hp) + abs(gp)
        if scale == 0.0:
            raise DomainError(f"|h'| + |g'| vanishes at z = {z}")
        return math.log(scale)


def schwarzian_harmonic(f: HarmonicMap, z: complex) -> complex:
    """Schwarzian of the harmonic map at z; reduces to the classical value
    when q vanishes identically."""
    hp = f.h.prime_jet(z)
    if hp.f0 == 0:
        raise LocalUnivalenceError(f"harmonic Schwarzian needs h'(z) != 0 at z = {z}")
    qj = f.q.eval_jet(z)
    q0, q1, q2 = qj.f0, qj.f1, qj.f2
    sh = _schwarzian_from_prime(hp)
    qb = q0.conjugate()
    den = 1.0 + abs(q0) ** 2
    correction = (2.0 * qb / den) * (q2 - q1 * hp.f1 / hp.f0)
    square = q1 * qb / den
    return sh + correction - 4.0 * square * square


def curvature_term(f: HarmonicMap, z: complex) -> float:
    """e^{2 sigma} |K|: the curvature summand of the harmonic criterion."""
    hp = f.h.prime_jet(z)
    if hp.f0 == 0:
        raise LocalUnivalenceError(f"curvature term needs h'(z) != 0 at z = {z}")
    qj = f.q.eval_jet(z)
    h1 = abs(hp.f0)
    g1 = abs(qj.f0) ** 2 * h1
    den = (1.0 + abs(qj.f0) ** 2) ** 4
    return (h1 + g1) ** 2 * 4.0 * abs(qj.f1) ** 2 / (h1 * h1 * den)


# ---------------------------------------------------------------------------
# Ahlfors Schwarzian of curves


def ahlfors_s1_from_derivatives(
    d1: Sequence[float], d2: Sequence[float], d3: Sequence[float]
) -> float:
    v1 = np.asarray(d1, dtype=float)
    v2 = np.asarray(d2, dtype=float)
    v3 = np.asarray(d3, dtype=float)
    speed2 = float(v1 @ v1)
    if speed2 < 1e-24:
        raise DomainError("Ahlfors Schwarzian undefined: curve speed vanishes")
    return (
        float(v1 @ v3) / speed2
        - 3.0 * float(v1 @ v2) ** 2 / speed2**2
        + 1.5 * float(v2 @ v2) / speed2
    )


def ahlfors_s1(curve: Callable[[float], Sequence[float]], x: float, step: float = 1e-4) -> float:
    """Ahlfors Schwarzian of a curve in R^n from finite differences with one
    Richardson refinement (fourth-order accurate)."""

    def samples(h: float):
        pts = [np.asarray(curve(x + k * h), dtype=float) for k in (-2, -1, 0, 1, 2)]
        d1 = (pts[3] - pts[1]) / (2 * h)
        d2 = (pts[3] - 2 * pts[2] + pts[1]) / (h * h)
        d3 = (pts[4] - 2 * pts[3] + 2 * pts[1] - pts[0]) / (2 * h**3)
        return d1, d2, d3

    c1, c2, c3 = samples(step)
    f1, f2, f3 = samples(step / 2)
    d1 = (4 * f1 - c1) / 3
    d2 = (4 * f2 - c2) / 3
    d3 = (4 * f3 - c3) / 3
    return ahlfors_s1_from_derivatives(d1, d2, d3)


def lift_diameter_derivatives(
    f: HarmonicMap, x: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """First three derivatives of the lifted curve x -> (U, V, W)(x) along the
    real diameter, taken from jets of h and q rather than finite differences.

    Along the real axis, d^k/dx^k conj(g(x)) = conj(g^(k)(x)) and
    W^(k) = 2 Im (q h')^(k-1)."""
    hp = f.h.prime_jet(x)
    gp = f.g_prime_jet(x)
    w = jet_mul(f.q.eval_jet(x), hp)
    rows = []
    for k in range(3):
        planar = _entry(hp, k) + _entry(gp, k).conjugate()
        rows.append(np.array([planar.real, planar.imag, 2.0 * _entry(w, k).imag]))
    return rows[0], rows[1], rows[2]


def _entry(j: Jet3, k: int) -> complex:
    return (j.f0, j.f1, j.f2, j.f3)[k]


def ahlfors_s1_lift(f: HarmonicMap, x: float) -> float:
    """Ahlfors Schwarzian of the lifted real-diameter curve, via jets."""
    return ahlfors_s1_from_derivatives(*lift_diameter_derivatives(f, x))


# ---------------------------------------------------------------------------
# Hyperbolic norm estimation


@dataclass(frozen=True)
class GridScan:
    value: float
    point: complex
    excluded: tuple[complex, ...]
    evaluations: int


@dataclass(frozen=True)
class NormEstimate:
    """Certified lower bound for the hyperbolic norm, with its witness."""

    lower: float
    grid_depth: int
    sup_point: complex
    excluded: tuple[complex, ...] = ()


_N_THETA = 256
_COARSE_RINGS = 32
_REFINE_ITERS = 40


def polar_supremum(
    fn: Callable[[complex], float],
    depth: int,
    n_theta: int = _N_THETA,
) -> GridScan:
    """Supremum of ``fn`` over nested polar grids in the disk of radius
    1 - 2^-depth, with local refinement around the running maximizer.

    Points where ``fn`` raises a DomainError are skipped and reported;
    NumericError propagates with the grid location attached. Ties are broken
    lexicographically on (|z|, arg z), so the result is evaluation-order
    independent.
    """
    if depth < 1:
        raise DomainError(f"grid depth must be >= 1, got {depth}")
    r_cap = 1.0 - 2.0 ** (-depth)

    best = [-math.inf, 0j]
    excluded: list[complex] = []
    evaluations = [0]

    def visit(z: complex) -> None:
        evaluations[0] += 1
        try:
            value = float(fn(z))
        except DomainError:
            excluded.append(z)
            return
        except NumericError as exc:
            raise NumericError(f"{exc} (grid point z = {z})") from exc
        if value > best[0] or (
            value == best[0]
            and (abs(z), _arg(z)) < (abs(best[1]), _arg(best[1]))
        ):
            best[0] = value
            best[1] = z

    visit(0j)
    rings = sorted(
        {j / _COARSE_RINGS for j in range(1, _COARSE_RINGS) if j / _COARSE_RINGS <= r_cap}
        | {1.0 - 2.0 ** (-k) for k in range(min(5, depth), depth + 1)}
    )
    thetas = [2.0 * math.pi * j / n_theta for j in range(n_theta)]
    for r in rings:
        for t in thetas:
            visit(r * complex(math.cos(t), math.sin(t)))

    # Local refinement around the running maximizer.
    dr = 1.0 / _COARSE_RINGS
    dt = 2.0 * math.pi / n_theta
    for _ in range(_REFINE_ITERS):
        r0 = abs(best[1])
        t0 = _arg(best[1])
        for r in np.linspace(max(0.0, r0 - dr), min(r_cap, r0 + dr), 5):
            for t in np.linspace(t0 - dt, t0 + dt, 5):
                visit(float(r) * complex(math.cos(float(t)), math.sin(float(t))))
        dr *= 0.5
        dt *= 0.5

    if best[0] == -math.inf:
        raise NumericError("all grid points failed to evaluate")
    return GridScan(best[0], best[1], tuple(excluded), evaluations[0])


def _arg(z: complex) -> float:
    a = math.atan2(z.imag, z.real)
    return a + 2.0 * math.pi if a < 0 else a


def norm_estimate(sf: Callable[[complex], complex], depth: int) -> NormEstimate:
    """Lower bound for sup over the disk of (1-|z|^2)^2 |sf(z)|."""

    def weight(z: complex) -> float:
        return (1.0 - abs(z) ** 2) ** 2 * abs(sf(z))

    scan = polar_supremum(weight, depth)
    return NormEstimate(scan.value, depth, scan.point, scan.excluded)


def norm_history(sf: Callable[[complex], complex], depth: int) -> list[NormEstimate]:
    """Norm estimates at depths depth-2, depth-1, depth (for the convergence
    heuristic: three successive depths within relative 1e-3)."""
    depths = [d for d in (depth - 2, depth - 1, depth) if d >= 1]
    return [norm_estimate(sf, d) for d in depths]


def norm_converged(history: Sequence[NormEstimate], rel_tol: float = 1e-3) -> bool:
    if len(history) < 3:
        return False
    values = [float(h.lower) for h in history[-3:]]
    scale = max(abs(v) for v in values) or 1.0
    return bool((max(values) - min(values)) / scale <= rel_tol)
