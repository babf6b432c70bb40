"""Adaptive quadrature for complex-valued integrands along straight segments.

The integrands here are analytic on the segment, so a Gauss rule with
bisection refinement converges geometrically. The error estimate for an
interval is the difference between its Gauss value and the sum over its two
halves; intervals are split until the local estimate meets a proportional
share of the absolute tolerance.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .errors import QuadratureError

# 10-point Gauss-Legendre nodes/weights on [-1, 1].
_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(10)

_MAX_DEPTH = 48


def _gauss(f: Callable[[float], complex], a: float, b: float) -> complex:
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    total = 0j
    for x, w in zip(_NODES, _WEIGHTS):
        total += w * f(mid + half * x)
    return total * half


def _adaptive(f, a: float, b: float, coarse: complex, tol: float, depth: int) -> complex:
    mid = 0.5 * (a + b)
    left = _gauss(f, a, mid)
    right = _gauss(f, mid, b)
    fine = left + right
    if abs(fine - coarse) <= tol:
        return fine
    if depth >= _MAX_DEPTH:
        raise QuadratureError(
            f"quadrature did not converge on [{a}, {b}] "
            f"(residual {abs(fine - coarse):.3e}, tolerance {tol:.3e})"
        )
    return _adaptive(f, a, mid, left, 0.5 * tol, depth + 1) + _adaptive(
        f, mid, b, right, 0.5 * tol, depth + 1
    )


def integrate_segment(
    integrand: Callable[[complex], complex],
    start: complex,
    end: complex,
    abs_tol: float = 1e-12,
) -> complex:
    """Integral of ``integrand`` along the straight segment from start to end."""
    start = complex(start)
    end = complex(end)
    if start == end:
        return 0j
    span = end - start

    def on_segment(t: float) -> complex:
        return integrand(start + t * span) * span

    coarse = _gauss(on_segment, 0.0, 1.0)
    # plain complex out: the Gauss weights are numpy scalars and would
    # otherwise leak numpy types into every downstream value
    return complex(_adaptive(on_segment, 0.0, 1.0, coarse, abs_tol, 0))
