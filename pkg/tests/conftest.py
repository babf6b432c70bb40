"""Shared numerical oracles for the test suite.

The finite-difference jet oracle is deliberately independent of the jet
arithmetic it checks: it samples only map *values* and reconstructs
derivatives with fourth-order central differences (Richardson-refined for the
third derivative).
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from diskschwarz.jet import Jet3


def fd_jet(fn: Callable[[complex], complex], z: complex, h: float = 1e-2) -> Jet3:
    """Jet of ``fn`` at z reconstructed from values alone."""

    def s(k: float) -> complex:
        return fn(z + k * h)

    f1 = (8.0 * (s(1) - s(-1)) - (s(2) - s(-2))) / (12.0 * h)
    f2 = (-s(2) + 16.0 * s(1) - 30.0 * s(0) + 16.0 * s(-1) - s(-2)) / (12.0 * h * h)

    def third(hh: float) -> complex:
        return (
            fn(z + 2 * hh) - 2.0 * fn(z + hh) + 2.0 * fn(z - hh) - fn(z - 2 * hh)
        ) / (2.0 * hh**3)

    f3 = (4.0 * third(h / 2) - third(h)) / 3.0
    return Jet3(fn(z), f1, f2, f3)


def rel_err(got: complex, expected: complex) -> float:
    scale = max(abs(expected), 1e-30)
    return abs(got - expected) / scale


def sigma_schwarzian_fd(fmap, z: complex, h: float = 1e-3) -> complex:
    """Harmonic Schwarzian via 2 (sigma_zz - sigma_z^2) with 2-D finite
    differences of the log conformal factor; an oracle independent of the
    jet-based formula."""

    def sig(x: float, y: float) -> float:
        return fmap.sigma(complex(x, y))

    x0, y0 = z.real, z.imag
    sx = (sig(x0 + h, y0) - sig(x0 - h, y0)) / (2 * h)
    sy = (sig(x0, y0 + h) - sig(x0, y0 - h)) / (2 * h)
    sxx = (sig(x0 + h, y0) - 2 * sig(x0, y0) + sig(x0 - h, y0)) / (h * h)
    syy = (sig(x0, y0 + h) - 2 * sig(x0, y0) + sig(x0, y0 - h)) / (h * h)
    sxy = (
        sig(x0 + h, y0 + h)
        - sig(x0 + h, y0 - h)
        - sig(x0 - h, y0 + h)
        + sig(x0 - h, y0 - h)
    ) / (4 * h * h)
    sigma_z = 0.5 * (sx - 1j * sy)
    sigma_zz = 0.25 * (sxx - syy - 2j * sxy)
    return 2.0 * (sigma_zz - sigma_z * sigma_z)


def random_disk_points(rng: np.random.Generator, n: int, radius: float) -> list[complex]:
    """Uniform sample of the disk of the given radius."""
    pts = []
    for _ in range(n):
        r = radius * np.sqrt(rng.uniform())
        t = rng.uniform(0.0, 2.0 * np.pi)
        pts.append(complex(r * np.cos(t), r * np.sin(t)))
    return pts
