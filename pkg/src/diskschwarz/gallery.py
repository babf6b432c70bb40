"""Built-in example maps and the regression gallery.

Every closed form checked here has an independent source: explicit Schwarzian
formulas, ODE solutions in closed form, lift coordinates of the catenoid, and
the known norm values 6 (Koebe) and 16 (its shear's analytic part). The
gallery runner evaluates each case and reports one residual per check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import nehari
from .criteria import UNIFORM_LOCAL, check_bound, count_valence, separation_audit
from .errors import InputError
from .expr import AnalyticMap, analytic_map
from .nehari import first_zero, hyperbolic_zero_spacing, integrate, parametric
from .hyperbolic import hyp_distance
from .schwarzian import (
    HarmonicMap,
    ahlfors_s1_lift,
    curvature_term,
    norm_estimate,
    schwarzian_harmonic,
    schwarzian_of,
)
from .surface import build_mesh, gauss_curvature, lift, shear

# Regression constant: grid sup at depth 12 of the hyperbolic norm of the
# Koebe-shear Schwarzian (the sup is approached along the real axis; the
# closed-form boundary limit there is 16).
KOEBE_SHEAR_NORM_DEPTH12 = 15.999999523050969

# Sampled norms can exceed an exact sup by cancellation noise in
# (1-|z|^2)^2 at radius ~ 1 - 2^-12; this absolute slack covers it.
NORM_ROUNDING_GUARD = 1e-10

GALLERY_SEED = 20260811


@dataclass(frozen=True)
class CheckResult:
    label: str
    residual: float
    tolerance: float
    passed: bool
    value: Optional[float] = None


@dataclass(frozen=True)
class CaseResult:
    name: str
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _check(label: str, residual: float, tolerance: float, value: float | None = None) -> CheckResult:
    return CheckResult(label, float(residual), float(tolerance), float(residual) <= float(tolerance), value)


# ---------------------------------------------------------------------------
# Named maps


def hille_map(delta: float = 1.0) -> AnalyticMap:
    """((1+z)/(1-z))^(i delta), normalized to 1 at the origin."""
    return analytic_map(f"(((1+z)/(1-z))^({repr(float(delta))}i))")


def koebe_map() -> AnalyticMap:
    """z/(1-z)^2, the extremal map for the norm bound 6."""
    return analytic_map("z/(1-z)^2")


def koebe_shear_analytic_part() -> AnalyticMap:
    """(1/3)(1-z)^{-3}, whose Schwarzian norm is 16."""
    return analytic_map("(1/3)/(1-z)^3")


def koebe_shear_g_part() -> AnalyticMap:
    """(z^2 - z + 1/3)/(1-z)^3, the co-analytic part of the Koebe shear."""
    return analytic_map("(z^2-z+1/3)/(1-z)^3")


def catenoid_map() -> HarmonicMap:
    """z + conj(1/z) on the punctured plane; lifts onto the catenoid."""
    return HarmonicMap(
        h=analytic_map("z", domain_radius=math.inf),
        q=analytic_map("1i/z", domain_radius=math.inf),
        basepoint=1.0 + 0j,
        g_base_value=1.0 + 0j,
    )


def spiral_map(delta: float = 1.0, c: float = 0.05) -> AnalyticMap:
    """c ((1+z)/(1-z))^(i delta): wraps the diameter onto the circle |z| = c."""
    return analytic_map(f"{repr(float(c))}*(((1+z)/(1-z))^({repr(float(delta))}i))")


def catenoid_composite(delta: float = 1.0, c: float = 0.05) -> HarmonicMap:
    """The catenoid map precomposed with the spiral map: a harmonic map of the
    disk whose lift revisits each point along the real diameter."""
    phi_src = f"{repr(float(c))}*(((1+z)/(1-z))^({repr(float(delta))}i))"
    return HarmonicMap(
        h=analytic_map(phi_src),
        q=analytic_map(f"1i/({phi_src})"),
        basepoint=0j,
        g_base_value=1.0 / c + 0j,
    )


def koebe_shear_map() -> HarmonicMap:
    """Horizontal shear of the Koebe map with dilatation z^2."""
    return shear(koebe_map(), analytic_map("z"))


def koebe_shear_closed_schwarzian(z: complex) -> complex:
    return -4.0 * (1.0 / (1.0 - z) + z.conjugate() / (1.0 + abs(z) ** 2)) ** 2


def catenoid_closed_schwarzian(z: complex) -> complex:
    return 4.0 * abs(z) ** 2 / (z * z * (1.0 + abs(z) ** 2) ** 2)


# ---------------------------------------------------------------------------
# Cases


def run_hille(delta: float = 1.0) -> CaseResult:
    f = hille_map(delta)
    checks = []
    rng = np.random.default_rng(GALLERY_SEED)
    worst = 0.0
    for _ in range(40):
        r = 0.9 * math.sqrt(rng.uniform())
        t = rng.uniform(0.0, 2.0 * math.pi)
        z = r * cmath.exp(1j * t)
        expected = 2.0 * (1.0 + delta * delta) / (1.0 - z * z) ** 2
        got = schwarzian_of(f, z)
        worst = max(worst, abs(got - expected) / abs(expected))
    checks.append(_check("schwarzian-closed-form", worst, 1e-9))

    spacing = hyperbolic_zero_spacing(delta)
    zero = first_zero(lambda x: (1.0 + delta * delta) / (1.0 - x * x) ** 2, 0.0)
    checks.append(
        _check("comparison-zero", abs(zero - spacing.euclidean_zero), 1e-8, zero)
    )
    checks.append(
        _check(
            "zero-hyperbolic-distance",
            abs(hyp_distance(0.0, zero) - spacing.hyperbolic),
            1e-7,
        )
    )
    checks.append(
        _check(
            "equal-value-separation",
            abs(separation_audit(f, [(0j, spacing.euclidean_zero + 0j)]) - spacing.hyperbolic),
            1e-9,
        )
    )

    worst = 0.0
    for r in (0.9, 0.99, 0.999):
        if min(abs(r - math.tanh(n * math.pi / delta)) for n in range(1, 12)) < 5e-4:
            continue  # contour too close to a root of f(z) = 1
        expected = 2 * math.floor(delta * math.atanh(r) / math.pi) + 1
        got = count_valence(f, 1.0 + 0j, r).count
        worst = max(worst, abs(got - expected))
    checks.append(_check("valence-ladder", worst, 0.0))

    verdict = check_bound(f, nehari.classical(), grid_depth=8)
    target = 2.0 * (1.0 + delta * delta)
    checks.append(
        _check("criterion-sup", abs(verdict.minimal_C - target) / target, 1e-6, verdict.minimal_C)
    )
    checks.append(
        _check("criterion-classification", 0.0 if verdict.classification == UNIFORM_LOCAL else 1.0, 0.0)
    )
    checks.append(
        _check(
            "criterion-separation",
            abs((verdict.separation_hyperbolic or math.nan) - spacing.hyperbolic),
            1e-6,
        )
    )
    return CaseResult("hille", tuple(checks))


def run_nehari_family() -> CaseResult:
    checks = []
    for t in (1.2, 1.5, 1.8):
        p = parametric(t)
        traj = integrate(p, 1.0, 0.0, 0.0, 0.99)
        exact = (1.0 - traj.x**2) ** (t / 2.0)
        checks.append(
            _check(f"ode-closed-form-t={t}", float(np.abs(traj.u - exact).max()), 1e-7)
        )
        checks.append(_check(f"mu-t={t}", abs(p.mu - t * (2.0 - t)), 1e-8, p.mu))

        f = analytic_map(f"primitive(1/(1-z^2)^{repr(float(t))})")
        verdict = check_bound(f, p, grid_depth=6)
        checks.append(
            _check(f"criterion-sharpness-t={t}", abs(verdict.minimal_C - 2.0), 1e-6, verdict.minimal_C)
        )

    checks.append(_check("mu-classical", abs(nehari.classical().mu - 1.0), 1e-12))
    checks.append(_check("mu-constant", abs(nehari.constant().mu), 1e-7))
    checks.append(_check("mu-linear", abs(nehari.linear().mu), 1e-7))

    # Sturm comparison: a larger weight forces an earlier zero.
    z1 = first_zero(lambda x: 2.0 / (1.0 - x * x) ** 2, 0.0)
    z2 = first_zero(lambda x: 5.0 / (1.0 - x * x) ** 2, 0.0)
    checks.append(_check("sturm-monotonicity", 0.0 if z2 < z1 else 1.0, 0.0))

    C = math.pi**2
    zero = first_zero(lambda x: C / 2.0, -0.9)
    checks.append(
        _check("constant-weight-spacing", abs(zero - (-0.9 + math.sqrt(2.0 / C) * math.pi)), 1e-8)
    )

    report = nehari.relative_convexity_check(parametric(1.5), nehari.classical(), b=0.8)
    checks.append(_check("relative-convexity", report.max_w2, 1e-8, report.max_w2))
    try:
        nehari.relative_convexity_check(parametric(1.5), nehari.classical(), b=0.9)
        ordered = 1.0  # Q <= P fails beyond sqrt(2/3); must be rejected
    except InputError:
        ordered = 0.0
    checks.append(_check("relative-convexity-precondition", ordered, 0.0))
    return CaseResult("nehari-family", tuple(checks))


def run_catenoid(delta: float = 1.0, c: float = 0.05) -> CaseResult:
    cat = catenoid_map()
    checks = []

    worst = 0.0
    for z in (1.0 + 0j, 0.8 + 0.4j, -0.3 + 1.2j, 2.0 + 0j):
        expected = catenoid_closed_schwarzian(z)
        worst = max(worst, abs(schwarzian_harmonic(cat, z) - expected))
    checks.append(_check("harmonic-schwarzian", worst, 1e-10))
    checks.append(_check("schwarzian-at-1", abs(schwarzian_harmonic(cat, 1.0 + 0j) - 1.0), 1e-12))

    checks.append(_check("curvature-term-at-1", abs(curvature_term(cat, 1.0 + 0j) - 1.0), 1e-12))
    checks.append(_check("curvature-term-at-2", abs(curvature_term(cat, 2.0 + 0j) - 0.16), 1e-12))
    checks.append(_check("gauss-curvature-at-1", abs(gauss_curvature(cat, 1.0 + 0j) + 0.25), 1e-12))
    checks.append(_check("gauss-curvature-at-2", abs(gauss_curvature(cat, 2.0 + 0j) + 0.1024), 1e-12))

    s = lift(cat, 2.0 + 0j)
    worst = max(abs(s.U - 2.5), abs(s.V), abs(s.W - 2.0 * math.log(2.0)))
    s = lift(cat, 1j)
    worst = max(worst, abs(s.U), abs(s.V - 2.0), abs(s.W))
    checks.append(_check("lift-points", worst, 1e-9))

    comp = catenoid_composite(delta, c)
    target = 2.0 * (1.0 + delta * delta)
    worst_rel = 0.0
    bound_excess = -math.inf
    for r in np.linspace(0.05, 0.95, 24):
        for theta in np.linspace(0.0, 2.0 * math.pi, 24, endpoint=False):
            zeta = r * cmath.exp(1j * theta)
            lhs = abs(schwarzian_harmonic(comp, zeta)) + curvature_term(comp, zeta)
            identity = target / abs(1.0 - zeta * zeta) ** 2
            bound = target / (1.0 - abs(zeta) ** 2) ** 2
            worst_rel = max(worst_rel, abs(lhs - identity) / identity)
            bound_excess = max(bound_excess, (lhs - bound) / bound)
    checks.append(_check("combined-identity", worst_rel, 1e-6))
    checks.append(_check("criterion-bound-holds", bound_excess, 1e-12))

    spacing = hyperbolic_zero_spacing(delta)
    sep = separation_audit(comp, [(0j, spacing.euclidean_zero + 0j)])
    checks.append(_check("lift-separation-exact", abs(sep - spacing.hyperbolic), 1e-9))

    worst = -math.inf
    for x in (-0.9, -0.6, -0.3, 0.0, 0.3, 0.6, 0.9):
        s1 = ahlfors_s1_lift(comp, x)
        rhs = schwarzian_harmonic(comp, x).real + curvature_term(comp, x)
        worst = max(worst, s1 - rhs)
    checks.append(_check("ahlfors-diameter-bound", worst, 1e-9))

    mesh = build_mesh(cat, r_max=2.0, n_r=4, n_theta=3)
    counts_ok = len(mesh.vertices) == 12 and len(mesh.faces) == 18
    checks.append(_check("mesh-counts", 0.0 if counts_ok else 1.0, 0.0))
    # vertex (i=3, j=0) sits at z = 2 on the positive real axis
    checks.append(_check("mesh-height", abs(mesh.vertices[9][2] - 2.0 * math.log(2.0)), 1e-9))
    return CaseResult("catenoid", tuple(checks))


def run_koebe() -> CaseResult:
    k = koebe_map()
    checks = []
    checks.append(_check("schwarzian-at-0", abs(schwarzian_of(k, 0j) + 6.0), 1e-12))
    worst = 0.0
    for z in (0.4 + 0.2j, -0.7 + 0.1j, 0.1 - 0.8j):
        expected = -6.0 / (1.0 - z * z) ** 2
        worst = max(worst, abs(schwarzian_of(k, z) - expected) / abs(expected))
    checks.append(_check("schwarzian-closed-form", worst, 1e-10))

    est = norm_estimate(lambda z: schwarzian_of(k, z), depth=12)
    checks.append(_check("norm-lower", 5.94 - est.lower, 0.0, est.lower))
    checks.append(_check("norm-upper", est.lower - 6.0, NORM_ROUNDING_GUARD, est.lower))

    verdict = check_bound(k, nehari.classical(), grid_depth=8)
    checks.append(_check("criterion-sup", abs(verdict.minimal_C - 6.0) / 6.0, 1e-6, verdict.minimal_C))
    checks.append(
        _check("criterion-classification", 0.0 if verdict.classification == UNIFORM_LOCAL else 1.0, 0.0)
    )
    checks.append(
        _check(
            "criterion-separation",
            abs((verdict.separation_hyperbolic or math.nan) - math.pi / math.sqrt(2.0)),
            1e-6,
        )
    )
    checks.append(_check("valence-at-0", abs(count_valence(k, 0j, 0.5).count - 1), 0.0))
    return CaseResult("koebe", tuple(checks))


def run_koebe_shear() -> CaseResult:
    f = koebe_shear_map()
    h_cf = koebe_shear_analytic_part()
    g_cf = koebe_shear_g_part()
    checks = []

    rng = np.random.default_rng(GALLERY_SEED + 1)
    h0 = f.h.eval_jet(0j).f0
    g0 = f.g.eval_jet(0j).f0
    h0_cf = h_cf.eval_jet(0j).f0
    g0_cf = g_cf.eval_jet(0j).f0
    worst_h = worst_g = 0.0
    for _ in range(12):
        r = 0.85 * math.sqrt(rng.uniform())
        z = r * cmath.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        worst_h = max(
            worst_h,
            abs((f.h.eval_jet(z).f0 - h0) - (h_cf.eval_jet(z).f0 - h0_cf)),
        )
        worst_g = max(
            worst_g,
            abs((f.g.eval_jet(z).f0 - g0) - (g_cf.eval_jet(z).f0 - g0_cf)),
        )
    checks.append(_check("shear-h-display", worst_h, 1e-10))
    checks.append(_check("shear-g-display", worst_g, 1e-10))

    rng = np.random.default_rng(GALLERY_SEED + 2)
    worst = 0.0
    for _ in range(20):
        r = 0.9 * math.sqrt(rng.uniform())
        z = r * cmath.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        worst = max(
            worst, abs(schwarzian_harmonic(f, z) - koebe_shear_closed_schwarzian(z))
        )
    checks.append(_check("harmonic-schwarzian-closed-form", worst, 1e-8))

    est = norm_estimate(lambda z: schwarzian_harmonic(f, z), depth=12)
    checks.append(_check("norm-bound-45", est.lower - 45.0, 0.0, est.lower))
    checks.append(
        _check("norm-regression", abs(est.lower - KOEBE_SHEAR_NORM_DEPTH12), 1e-6, est.lower)
    )

    est_h = norm_estimate(lambda z: schwarzian_of(h_cf, z), depth=12)
    checks.append(_check("analytic-part-norm-lower", 15.84 - est_h.lower, 0.0, est_h.lower))
    checks.append(_check("analytic-part-norm-upper", est_h.lower - 16.0, NORM_ROUNDING_GUARD, est_h.lower))

    forward_bound = est_h.lower + 2.0 * math.sqrt(1.0 + 0.5 * est_h.lower) + 7.0
    checks.append(_check("norm-vs-analytic-part", est.lower - forward_bound, 0.0))

    rng = np.random.default_rng(GALLERY_SEED + 3)
    worst = -math.inf
    for _ in range(40):
        r = 0.95 * math.sqrt(rng.uniform())
        z = r * cmath.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        qj = f.q.eval_jet(z)
        lhs = abs(qj.f1) / (1.0 - abs(qj.f0) ** 2)
        rhs = 1.0 / (1.0 - abs(z) ** 2)
        worst = max(worst, (lhs - rhs) / rhs)
    checks.append(_check("schwarz-pick", worst, 1e-12))
    return CaseResult("koebe-shear", tuple(checks))


# ---------------------------------------------------------------------------
# Runner

_CASES = {
    "hille": run_hille,
    "nehari-family": run_nehari_family,
    "catenoid": run_catenoid,
    "koebe": run_koebe,
    "koebe-shear": run_koebe_shear,
}


def case_names() -> tuple[str, ...]:
    return tuple(_CASES)


def run_gallery(only: Optional[str] = None, delta: Optional[float] = None) -> list[CaseResult]:
    """Run the regression gallery; ``only`` restricts to one case, ``delta``
    overrides the parameter of the cases that take one."""
    if only is not None and only not in _CASES:
        raise InputError(f"unknown gallery case {only!r}; available: {', '.join(_CASES)}")
    names = [only] if only else list(_CASES)
    results = []
    for name in names:
        runner = _CASES[name]
        if name in ("hille", "catenoid") and delta is not None:
            results.append(runner(delta=delta))
        else:
            results.append(runner())
    return results
