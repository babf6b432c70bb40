"""Geometry of the unit disk: the hyperbolic metric and disk automorphisms.

The metric is d(a, b) = (1/2) log((1+rho)/(1-rho)) = atanh(rho) with
pseudo-hyperbolic distance rho(a, b) = |(a-b)/(1 - conj(a) b)|. Automorphisms
are stored in the normal form z -> e^{i theta} (z - a)/(1 - conj(a) z).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import jet
from .errors import DomainError, InputError
from .jet import Jet3


def _require_in_disk(z: complex, name: str = "point") -> complex:
    z = complex(z)
    if abs(z) >= 1.0:
        raise DomainError(f"{name} {z} is not inside the open unit disk")
    return z


def pseudo_distance(alpha: complex, beta: complex) -> float:
    """rho(alpha, beta) = |(alpha - beta) / (1 - conj(alpha) beta)|."""
    alpha = _require_in_disk(alpha)
    beta = _require_in_disk(beta)
    return abs((alpha - beta) / (1.0 - alpha.conjugate() * beta))


def hyp_distance(alpha: complex, beta: complex) -> float:
    """Hyperbolic distance between two points of the disk."""
    return math.atanh(pseudo_distance(alpha, beta))


@dataclass(frozen=True)
class DiskAutomorphism:
    """z -> e^{i theta} (z - a)/(1 - conj(a) z), a Moebius self-map of the disk."""

    a: complex
    theta: float

    def __post_init__(self):
        _require_in_disk(self.a, "automorphism parameter a")

    def __call__(self, z: complex) -> complex:
        z = complex(z)
        return cmath.exp(1j * self.theta) * (z - self.a) / (1.0 - self.a.conjugate() * z)

    def jet(self, z: complex) -> Jet3:
        _require_in_disk(z)
        num = Jet3(z - self.a, 1.0 + 0j)
        den = Jet3(1.0 - self.a.conjugate() * z, -self.a.conjugate())
        return jet.constant(cmath.exp(1j * self.theta)) * (num / den)

    def inverse(self) -> "DiskAutomorphism":
        # w = e^{it}(z-a)/(1-conj(a)z)  <=>  z = e^{-it}(w + a e^{it})/(1 + conj(a) e^{-it} w)
        phase = cmath.exp(1j * self.theta)
        return _from_mobius(lambda w: (w / phase + self.a) / (1.0 + self.a.conjugate() * w / phase))

    def compose(self, other: "DiskAutomorphism") -> "DiskAutomorphism":
        """The automorphism z -> self(other(z))."""
        return _from_mobius(lambda z: self(other(z)))


def _from_mobius(f) -> DiskAutomorphism:
    # Recover normal-form parameters from an abstract disk Moebius map.
    # Any such map is f(z) = (w0 + c z)/(1 + d z) with w0 = f(0),
    # c = e^{i theta}, d = -conj(a); three values pin it down exactly.
    w0 = f(0.0)
    z1, z2 = 0.35, -0.41 + 0.27j
    w1, w2 = f(z1), f(z2)
    # w (1 + d z) = w0 + c z  =>  c z - d (z w) = w - w0, linear in (c, d).
    det = z1 * (-z2 * w2) - (-z1 * w1) * z2
    c = ((w1 - w0) * (-z2 * w2) - (w2 - w0) * (-z1 * w1)) / det
    a = -w0 / c
    theta = math.atan2(c.imag, c.real)
    return DiskAutomorphism(complex(a), theta)


def automorphism_through(alpha: complex, beta: complex) -> DiskAutomorphism:
    """The automorphism T with T(0) = alpha and T(b) = beta for
    b = rho(alpha, beta) > 0 real."""
    alpha = _require_in_disk(alpha, "alpha")
    beta = _require_in_disk(beta, "beta")
    if alpha == beta:
        raise InputError("degenerate input: alpha == beta")
    u = (beta - alpha) / (1.0 - alpha.conjugate() * beta)
    theta = math.atan2(u.imag, u.real)
    a = -alpha * cmath.exp(-1j * theta)
    return DiskAutomorphism(a, theta)


def apply(T: DiskAutomorphism, z: complex) -> Jet3:
    """Jet of the automorphism at z (its Schwarzian vanishes identically)."""
    return T.jet(z)
