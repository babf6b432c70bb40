import math

import numpy as np
import pytest

from conftest import random_disk_points
from diskschwarz.errors import DomainError, InputError
from diskschwarz.hyperbolic import (
    DiskAutomorphism,
    apply,
    automorphism_through,
    hyp_distance,
    pseudo_distance,
)
from diskschwarz.schwarzian import schwarzian_analytic


def test_distance_basic_values():
    assert abs(hyp_distance(0.0, 0.5) - 0.5 * math.log(3.0)) <= 1e-15
    assert hyp_distance(0.3 + 0.2j, 0.3 + 0.2j) == 0.0


def test_distance_tanh_spacing():
    # Points tanh(pi) and tanh(2 pi) sit at hyperbolic distance exactly pi.
    # atanh amplifies rounding in rho by 1/(1-rho^2) ~ 134 here, so the
    # achievable double-precision agreement is ~5e-12.
    d = hyp_distance(math.tanh(math.pi), math.tanh(2.0 * math.pi))
    assert abs(d - math.pi) <= 1e-10


def test_distance_symmetry_and_positivity():
    rng = np.random.default_rng(11)
    pts = random_disk_points(rng, 20, 0.95)
    for a, b in zip(pts[::2], pts[1::2]):
        assert abs(hyp_distance(a, b) - hyp_distance(b, a)) <= 1e-15
        assert hyp_distance(a, b) > 0.0


def test_distance_outside_disk_rejected():
    with pytest.raises(DomainError):
        hyp_distance(1.0, 0.0)
    with pytest.raises(DomainError):
        hyp_distance(0.0, -1.0000001)


def test_triangle_inequality():
    rng = np.random.default_rng(12)
    pts = random_disk_points(rng, 30, 0.9)
    for a, b, c in zip(pts[::3], pts[1::3], pts[2::3]):
        assert hyp_distance(a, c) <= hyp_distance(a, b) + hyp_distance(b, c) + 1e-12


def test_automorphism_through_axis():
    T = automorphism_through(0.0, 0.5)
    assert abs(T(0.0)) <= 1e-15
    assert abs(T(0.5) - 0.5) <= 1e-15
    assert abs(T.theta) <= 1e-15


def test_automorphism_through_generic():
    alpha, beta = 0.3 + 0j, -0.3 + 0j
    T = automorphism_through(alpha, beta)
    b = pseudo_distance(alpha, beta)
    assert abs(b - 0.6 / 1.09) <= 1e-15
    assert abs(T(0.0) - alpha) <= 1e-15
    assert abs(T(b) - beta) <= 1e-14


def test_automorphism_through_random_pairs():
    rng = np.random.default_rng(13)
    pts = random_disk_points(rng, 40, 0.9)
    for alpha, beta in zip(pts[::2], pts[1::2]):
        T = automorphism_through(alpha, beta)
        b = pseudo_distance(alpha, beta)
        assert b > 0.0
        assert abs(T(0.0) - alpha) <= 1e-13
        assert abs(T(b) - beta) <= 1e-13


def test_degenerate_pair_rejected():
    with pytest.raises(InputError):
        automorphism_through(0.2 + 0.1j, 0.2 + 0.1j)


def test_metric_invariance_under_automorphisms():
    rng = np.random.default_rng(14)
    T = DiskAutomorphism(0.4 - 0.2j, 1.1)
    for a, b in zip(random_disk_points(rng, 10, 0.9), random_disk_points(rng, 10, 0.9)):
        assert abs(hyp_distance(T(a), T(b)) - hyp_distance(a, b)) <= 1e-12


def test_apply_identity():
    T = DiskAutomorphism(0j, 0.0)
    j = apply(T, 0.3 + 0.4j)
    assert j.f0 == 0.3 + 0.4j
    assert j.f1 == 1.0 + 0j
    assert j.f2 == 0j and j.f3 == 0j


def test_apply_value():
    T = DiskAutomorphism(0.5 + 0j, 0.0)
    assert abs(apply(T, 0j).f0 + 0.5) <= 1e-15


def test_automorphism_schwarzian_vanishes():
    rng = np.random.default_rng(15)
    T = DiskAutomorphism(0.37 + 0.21j, -0.8)
    for z in random_disk_points(rng, 15, 0.95):
        assert abs(schwarzian_analytic(T.jet(z))) <= 1e-12


def test_conformal_density_identity():
    # |T'(z)| / (1 - |T(z)|^2) == 1 / (1 - |z|^2)
    rng = np.random.default_rng(16)
    T = DiskAutomorphism(-0.25 + 0.55j, 2.3)
    for z in random_disk_points(rng, 20, 0.95):
        j = T.jet(z)
        lhs = abs(j.f1) / (1.0 - abs(j.f0) ** 2)
        rhs = 1.0 / (1.0 - abs(z) ** 2)
        assert abs(lhs - rhs) <= 1e-12 * rhs


def test_compose_and_inverse_are_automorphisms():
    rng = np.random.default_rng(17)
    S = DiskAutomorphism(0.3 + 0.1j, 0.7)
    T = DiskAutomorphism(-0.2 + 0.4j, -1.9)
    C = S.compose(T)
    assert abs(C.a) < 1.0
    for z in random_disk_points(rng, 10, 0.9):
        assert abs(C(z) - S(T(z))) <= 1e-12
    inv = T.inverse()
    for z in random_disk_points(rng, 10, 0.9):
        assert abs(inv(T(z)) - z) <= 1e-12


def test_parameter_outside_disk_rejected():
    with pytest.raises(DomainError):
        DiskAutomorphism(1.2 + 0j, 0.0)
