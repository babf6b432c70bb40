"""Exact forward-mode arithmetic on third-order complex jets.

A Jet3 carries the value and first three derivatives of a map at a point.
All combination rules (Leibniz, quotient, Faa di Bruno composition) are exact
to order three, so derived quantities like the Schwarzian are accurate to
floating-point rounding rather than finite-difference truncation.

Branch conventions: log, sqrt and non-integer powers use the principal branch
with the cut along the negative real axis (zero included). Integer powers are
expanded by repeated multiplication and therefore work on the cut as well.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .errors import DomainError

_Scalar = (int, float, complex)


@dataclass(frozen=True)
class Jet3:
    """Value f0 and derivatives f1, f2, f3 of a map at one point."""

    f0: complex
    f1: complex = 0j
    f2: complex = 0j
    f3: complex = 0j

    def __add__(self, other):
        return jet_add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return jet_sub(self, _coerce(other))

    def __rsub__(self, other):
        return jet_sub(_coerce(other), self)

    def __mul__(self, other):
        return jet_mul(self, _coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return jet_div(self, _coerce(other))

    def __rtruediv__(self, other):
        return jet_div(_coerce(other), self)

    def __neg__(self):
        return Jet3(-self.f0, -self.f1, -self.f2, -self.f3)

    def is_finite(self) -> bool:
        return all(
            cmath.isfinite(c) for c in (self.f0, self.f1, self.f2, self.f3)
        )


def _coerce(x) -> Jet3:
    if isinstance(x, Jet3):
        return x
    if isinstance(x, _Scalar):
        return Jet3(complex(x))
    raise TypeError(f"cannot combine Jet3 with {type(x).__name__}")


def constant(c: complex) -> Jet3:
    """Jet of the constant map z -> c."""
    return Jet3(complex(c))


def variable(z: complex) -> Jet3:
    """Jet of the identity map at the point z."""
    return Jet3(complex(z), 1.0 + 0j)


def jet_add(a: Jet3, b: Jet3) -> Jet3:
    return Jet3(a.f0 + b.f0, a.f1 + b.f1, a.f2 + b.f2, a.f3 + b.f3)


def jet_sub(a: Jet3, b: Jet3) -> Jet3:
    return Jet3(a.f0 - b.f0, a.f1 - b.f1, a.f2 - b.f2, a.f3 - b.f3)


def jet_mul(a: Jet3, b: Jet3) -> Jet3:
    # Leibniz rule to order 3.
    return Jet3(
        a.f0 * b.f0,
        a.f1 * b.f0 + a.f0 * b.f1,
        a.f2 * b.f0 + 2.0 * a.f1 * b.f1 + a.f0 * b.f2,
        a.f3 * b.f0 + 3.0 * a.f2 * b.f1 + 3.0 * a.f1 * b.f2 + a.f0 * b.f3,
    )


def jet_div(a: Jet3, b: Jet3) -> Jet3:
    if b.f0 == 0:
        raise DomainError(f"jet division by zero value (divisor jet {b})")
    return jet_mul(a, _reciprocal(b))


def _reciprocal(b: Jet3) -> Jet3:
    w = 1.0 / b.f0
    outer = Jet3(w, -w * w, 2.0 * w**3, -6.0 * w**4)
    return compose(outer, b)


def compose(outer: Jet3, inner: Jet3) -> Jet3:
    """Faa di Bruno to order 3: jet of g(f(z)) from the jet of g at f(z)
    (``outer``) and the jet of f at z (``inner``)."""
    g1, g2, g3 = outer.f1, outer.f2, outer.f3
    f1, f2, f3 = inner.f1, inner.f2, inner.f3
    return Jet3(
        outer.f0,
        g1 * f1,
        g2 * f1 * f1 + g1 * f2,
        g3 * f1**3 + 3.0 * g2 * f1 * f2 + g1 * f3,
    )


def _require_off_cut(value: complex, op: str) -> None:
    if value.imag == 0.0 and value.real <= 0.0:
        raise DomainError(
            f"{op} of {value}: principal branch cut (-inf, 0] reached"
        )


def jet_exp(a: Jet3) -> Jet3:
    e = cmath.exp(a.f0)
    return compose(Jet3(e, e, e, e), a)


def jet_log(a: Jet3) -> Jet3:
    _require_off_cut(a.f0, "log")
    w = 1.0 / a.f0
    return compose(Jet3(cmath.log(a.f0), w, -w * w, 2.0 * w**3), a)


def jet_sqrt(a: Jet3) -> Jet3:
    _require_off_cut(a.f0, "sqrt")
    s = cmath.sqrt(a.f0)
    d1 = 0.5 / s
    d2 = -0.25 / (s * a.f0)
    d3 = 0.375 / (s * a.f0 * a.f0)
    return compose(Jet3(s, d1, d2, d3), a)


def jet_sin(a: Jet3) -> Jet3:
    s, c = cmath.sin(a.f0), cmath.cos(a.f0)
    return compose(Jet3(s, c, -s, -c), a)


def jet_cos(a: Jet3) -> Jet3:
    s, c = cmath.sin(a.f0), cmath.cos(a.f0)
    return compose(Jet3(c, -s, -c, s), a)


# Integer exponents up to this size are expanded by multiplication, which is
# exact and valid on the branch cut; beyond it exp(s log a) takes over.
_POW_MUL_LIMIT = 64


def jet_pow(a: Jet3, s: complex) -> Jet3:
    """Jet of a(z)**s for a constant exponent s."""
    s = complex(s)
    n = s.real
    if s.imag == 0.0 and n == int(n) and abs(n) <= _POW_MUL_LIMIT:
        return _jet_ipow(a, int(n))
    _require_off_cut(a.f0, "pow")
    return jet_exp(jet_mul(constant(s), jet_log(a)))


def _jet_ipow(a: Jet3, n: int) -> Jet3:
    if n < 0:
        if a.f0 == 0:
            raise DomainError("negative power of jet with zero value")
        return _jet_ipow(_reciprocal(a), -n)
    result = constant(1.0)
    base = a
    while n:
        if n & 1:
            result = jet_mul(result, base)
        base = jet_mul(base, base)
        n >>= 1
    return result
