"""Nehari weight functions and the comparison ODE u'' + p u = 0.

A Nehari function is a positive, continuous, even weight p on (-1, 1) such
that (1-x^2)^2 p(x) is nonincreasing on [0, 1) and some solution of
u'' + p u = 0 never vanishes there. The built-in kinds:

    classical    (1-x^2)^{-2}           nonvanishing solution sqrt(1-x^2)
    constant     pi^2/4                 cos(pi x / 2)
    linear       2 (1-x^2)^{-1}         1 - x^2
    parametric   t(1-(t-1)x^2)/(1-x^2)^2, 1 < t < 2,   (1-x^2)^{t/2}
    custom       cubic spline through a user-supplied (x, p) table

The limit mu = lim_{x->1} (1-x^2)^2 p(x) governs finite-valence conclusions;
it is computed by Richardson extrapolation near the boundary (for tables, by
a linear fit in 1-x over the outermost samples, flagged in ``mu_method``).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from .errors import DomainError, InputError, NumericError

X_CAP = 1.0 - 1e-6  # integration never crosses this point
_MU_EPS = 1e-8
_RIGIDITY_TOL = 1e-6

KINDS = ("classical", "constant", "linear", "parametric", "custom")


@dataclass(frozen=True)
class NehariFunction:
    """A validated Nehari weight. Callable as p(x) for |x| < 1."""

    kind: str
    t: Optional[float] = None
    table: Optional[tuple[tuple[float, float], ...]] = None
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown weight kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == "parametric":
            if self.t is None or not 1.0 < self.t < 2.0:
                raise InputError(f"parametric weight needs 1 < t < 2, got {self.t}")
        if self.kind == "custom":
            self._check_table()
        if self.validate:
            self.certificate  # noqa: B018 - forces the validity checks

    def __call__(self, x: float) -> float:
        x = abs(float(x))  # evenness
        if x >= 1.0:
            raise DomainError(f"weight evaluated outside (-1, 1): x = {x}")
        if self.kind == "classical":
            d = 1.0 - x * x
            return 1.0 / (d * d)
        if self.kind == "constant":
            return math.pi**2 / 4.0
        if self.kind == "linear":
            return 2.0 / (1.0 - x * x)
        if self.kind == "parametric":
            d = 1.0 - x * x
            return self.t * (1.0 - (self.t - 1.0) * x * x) / (d * d)
        return self._table_value(x)

    # -- custom tables ------------------------------------------------------

    def _check_table(self) -> None:
        if not self.table or len(self.table) < 8:
            raise InputError("custom weight needs at least 8 (x, p) samples")
        xs = [x for x, _ in self.table]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise InputError("custom weight table: x values must be strictly increasing")
        if xs[0] < 0.0 or xs[-1] >= 1.0:
            raise InputError("custom weight table: x values must lie in [0, 1)")
        if xs[-1] < 0.99:
            raise InputError(
                "custom weight table does not reach x >= 0.99; "
                "cannot extrapolate the boundary limit mu"
            )
        if any(p <= 0.0 for _, p in self.table):
            raise InputError("custom weight table: p values must be positive")

    @cached_property
    def _spline(self) -> CubicSpline:
        # Interpolate the bounded normal form w = (1-x^2)^2 p rather than p
        # itself: p typically blows up like (1-x)^-2 near the boundary, where
        # a cubic through raw p values oscillates and goes negative.
        xs = np.array([x for x, _ in self.table])
        ws = np.array([(1.0 - x * x) ** 2 * p for x, p in self.table])
        return CubicSpline(xs, ws)

    def _table_value(self, x: float) -> float:
        xs_max = self.table[-1][0]
        d = 1.0 - x * x
        if x > xs_max:
            # Extend by the extrapolated boundary form w(x)/(1-x^2)^2.
            return max(self._w_tail(1.0 - x), 1e-300) / (d * d)
        return float(self._spline(x)) / (d * d)

    @cached_property
    def _w_fit(self) -> tuple[float, float]:
        # Linear fit of w = (1-x^2)^2 p against 1-x over the outermost samples.
        pts = self.table[-5:]
        eps = np.array([1.0 - x for x, _ in pts])
        w = np.array([(1.0 - x * x) ** 2 * p for x, p in pts])
        slope, intercept = np.polyfit(eps, w, 1)
        return float(slope), float(intercept)

    def _w_tail(self, eps: float) -> float:
        slope, intercept = self._w_fit
        return intercept + slope * eps

    # -- mu -----------------------------------------------------------------

    @cached_property
    def mu(self) -> float:
        return mu_of(self)

    @property
    def mu_method(self) -> str:
        if self.kind == "custom":
            return "table-linear-extrapolation"
        return "boundary-richardson"

    # -- validity certificate ------------------------------------------------

    @cached_property
    def certificate(self) -> dict:
        """Sampled checks of the Nehari-function properties; raises InputError
        if any fails."""
        xs = np.linspace(0.0, X_CAP, 2001)
        w = np.array([(1.0 - x * x) ** 2 * self(x) for x in xs])
        ps = np.array([self(x) for x in xs])
        if not np.all(np.isfinite(ps)) or np.any(ps <= 0.0):
            raise InputError(f"{self.kind} weight is not positive/finite on [0, 1)")
        increments = np.diff(w)
        worst = float(increments.max()) if len(increments) else 0.0
        if worst > 1e-10 * max(1.0, float(np.abs(w).max())):
            at = xs[1 + int(np.argmax(increments))]
            raise InputError(
                f"(1-x^2)^2 p(x) increases near x = {at:.6f}; not a Nehari function"
            )
        shoot_cap = X_CAP if self.kind != "custom" else min(X_CAP, self.table[-1][0])
        traj = integrate(self, 1.0, 0.0, 0.0, shoot_cap)
        min_u = float(np.min(traj.u))
        if min_u <= 0.0:
            raise InputError(
                f"the even solution of u'' + p u = 0 vanishes before x = {shoot_cap}; "
                "not a Nehari function"
            )
        mu = mu_of(self)
        if self.kind == "custom" and mu > 1.0 - _RIGIDITY_TOL:
            # A weight with boundary limit 1 must be the classical one.
            dev = float(np.abs(w - 1.0).max())
            if dev > _RIGIDITY_TOL:
                raise InputError(
                    "custom weight has mu ~ 1 but deviates from the classical "
                    f"weight by {dev:.3e} (scaled); only (1-x^2)^-2 attains mu = 1"
                )
        return {
            "kind": self.kind,
            "monotone_slack": worst,
            "shoot_min_u": min_u,
            "shoot_cap": shoot_cap,
            "mu": mu,
            "mu_method": self.mu_method,
        }


def classical() -> NehariFunction:
    return NehariFunction("classical")


def constant() -> NehariFunction:
    return NehariFunction("constant")


def linear() -> NehariFunction:
    return NehariFunction("linear")


def parametric(t: float) -> NehariFunction:
    return NehariFunction("parametric", t=t)


def from_table(pairs: Sequence[tuple[float, float]]) -> NehariFunction:
    return NehariFunction("custom", table=tuple((float(x), float(p)) for x, p in pairs))


def load_weight_csv(path: str | Path) -> NehariFunction:
    """Custom weight from a CSV of (x, p(x)) rows, x in [0, 1) strictly increasing."""
    pairs = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].strip().startswith("#"):
                continue
            if row[0].strip().lower() in ("x", "index"):
                continue  # header
            if len(row) < 2:
                raise InputError(f"weight file {path}: malformed row {row!r}")
            pairs.append((float(row[0]), float(row[1])))
    return from_table(pairs)


def make_weight(spec: str) -> NehariFunction:
    """Weight from a CLI-style spec: classical | const | linear | param:<t> | file:<path>."""
    spec = spec.strip()
    if spec == "classical":
        return classical()
    if spec in ("const", "constant"):
        return constant()
    if spec == "linear":
        return linear()
    if spec.startswith("param:"):
        return parametric(float(spec.split(":", 1)[1]))
    if spec.startswith("file:"):
        return load_weight_csv(spec.split(":", 1)[1])
    raise InputError(
        f"unknown weight spec {spec!r}; expected classical|const|linear|param:<t>|file:<path>"
    )


def mu_of(p: NehariFunction) -> float:
    """Boundary limit of (1-x^2)^2 p(x) as x -> 1, clamped to [0, 1]."""
    if p.kind == "custom":
        mu = p._w_tail(0.0)
        return min(1.0, max(0.0, mu))

    def w(x: float) -> float:
        d = 1.0 - x * x
        return d * d * p(x)

    # The boundary offset is linear in eps = 1-x for the built-in kinds, so a
    # two-point Richardson step removes it.
    m1 = w(1.0 - _MU_EPS)
    m2 = w(1.0 - _MU_EPS / 2.0)
    return min(1.0, max(0.0, 2.0 * m2 - m1))


# ---------------------------------------------------------------------------
# ODE machinery


@dataclass(frozen=True)
class OdeTrajectory:
    """Uniform samples of a solution of u'' + p u = 0."""

    x: np.ndarray
    u: np.ndarray
    up: np.ndarray
    step: float


def _check_window(a: float, b: float) -> None:
    if not (-X_CAP - 1e-15 <= a < b <= X_CAP + 1e-15):
        raise DomainError(
            f"integration window [{a}, {b}] must lie inside [-{X_CAP}, {X_CAP}]"
        )


def integrate(
    p: Callable[[float], float],
    u0: float,
    u0p: float,
    a: float,
    b: float,
    n: int = 2049,
) -> OdeTrajectory:
    """Adaptive integration of u'' + p u = 0 with u(a) = u0, u'(a) = u0p."""
    _check_window(a, b)

    def rhs(x, y):
        return (y[1], -p(x) * y[0])

    xs = np.linspace(a, b, n)
    sol = solve_ivp(
        rhs,
        (a, b),
        (u0, u0p),
        method="DOP853",
        rtol=1e-11,
        atol=1e-13,
        dense_output=False,
        t_eval=xs,
    )
    if not sol.success:
        raise NumericError(f"ODE integration failed on [{a}, {b}]: {sol.message}")
    return OdeTrajectory(sol.t, sol.y[0], sol.y[1], (b - a) / (n - 1))


def first_zero(
    p: Callable[[float], float], from_: float, cap: float = X_CAP
) -> Optional[float]:
    """Smallest zero > from_ of the solution with u(from_) = 0, u'(from_) = 1,
    or None if the solution does not vanish again before ``cap``.

    The solution leaves zero upward, so the next zero is a downward crossing;
    the event solver localizes it to machine precision.
    """
    _check_window(from_, cap)

    def rhs(x, y):
        return (y[1], -p(x) * y[0])

    def crossing(x, y):
        return y[0]

    crossing.terminal = True
    crossing.direction = -1.0

    sol = solve_ivp(
        rhs,
        (from_, cap),
        (0.0, 1.0),
        method="DOP853",
        rtol=1e-12,
        atol=1e-14,
        events=crossing,
    )
    if not sol.success:
        raise NumericError(f"ODE integration failed from {from_}: {sol.message}")
    events = [t for t in sol.t_events[0] if t > from_ + 1e-12]
    return float(events[0]) if events else None


class ZeroSpacing(NamedTuple):
    hyperbolic: float
    euclidean_zero: float


def hyperbolic_zero_spacing(delta: float) -> ZeroSpacing:
    """Zero separation of w'' + (1+delta^2)(1-x^2)^{-2} w = 0: hyperbolic
    spacing pi/delta, first Euclidean zero tanh(pi/delta) from the origin."""
    if delta <= 0:
        raise DomainError(f"delta must be positive, got {delta}")
    return ZeroSpacing(math.pi / delta, math.tanh(math.pi / delta))


# ---------------------------------------------------------------------------
# Relative convexity


@dataclass(frozen=True)
class RelativeConvexityReport:
    max_w2: float
    argmax_y: float
    argmax_x: float
    length: float
    samples: int
    fd_step: float


def relative_convexity_check(
    P: Callable[[float], float],
    Q: Callable[[float], float],
    b: float,
    samples: int = 400,
) -> RelativeConvexityReport:
    """Concavity check for w(y) = u(G(y)) / v(G(y)).

    Here u'' + P u = 0 and v'' + Q v = 0 with unit initial values and zero
    slopes at 0, G inverts F(x) = integral of v^{-2}, and Q <= P with u, v > 0
    is required on [0, b]. The report carries the maximum numerically
    reconstructed second derivative of w over interior samples; concavity
    means it stays at (numerical) zero or below.
    """
    if not 0.0 < b <= X_CAP:
        raise DomainError(f"b must lie in (0, {X_CAP}], got {b}")
    xs = np.linspace(0.0, b, 2001)
    for x in xs:
        Px, Qx = P(x), Q(x)
        if Qx > Px + 1e-12 * max(1.0, abs(Px)):
            raise InputError(
                f"precondition Q <= P fails at x = {x:.6f}: Q = {Qx!r} > P = {Px!r}"
            )

    # One coupled solve keeps u and v on identical step sequences, so the
    # P == Q case reconstructs w'' as an exact zero.
    def rhs(x, y):
        u, up, v, vp, _ = y
        return (up, -P(x) * u, vp, -Q(x) * v, 1.0 / (v * v))

    sol = solve_ivp(
        rhs,
        (0.0, b),
        (1.0, 0.0, 1.0, 0.0, 0.0),
        method="DOP853",
        rtol=1e-11,
        atol=1e-13,
        dense_output=True,
    )
    if not sol.success:
        raise NumericError(f"ODE integration failed on [0, {b}]: {sol.message}")

    dense = sol.sol
    vals = dense(xs)
    if vals[0].min() <= 0.0:
        at = xs[int(np.argmax(vals[0] <= 0.0))]
        raise InputError(f"u vanishes at x ~ {at:.6f}; precondition u > 0 fails")
    if vals[2].min() <= 0.0:
        at = xs[int(np.argmax(vals[2] <= 0.0))]
        raise InputError(f"v vanishes at x ~ {at:.6f}; precondition v > 0 fails")

    length = float(dense(b)[4])

    def x_of_y(y: float) -> float:
        return brentq(lambda x: dense(x)[4] - y, 0.0, b, xtol=1e-14)

    def w(y: float) -> float:
        x = x_of_y(y)
        u, _, v, _, _ = dense(x)
        return u / v

    h = min(1e-3, length / (4.0 * samples))
    ys = np.linspace(2.0 * h, length - 2.0 * h, samples)
    max_w2 = -math.inf
    arg_y = 0.0
    for y in ys:
        w2 = (w(y + h) - 2.0 * w(y) + w(y - h)) / (h * h)
        if w2 > max_w2:
            max_w2 = w2
            arg_y = float(y)
    return RelativeConvexityReport(
        max_w2=max_w2,
        argmax_y=arg_y,
        argmax_x=x_of_y(arg_y),
        length=length,
        samples=samples,
        fd_step=h,
    )
