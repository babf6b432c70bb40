import cmath
import math

import numpy as np
import pytest

from conftest import fd_jet, rel_err
from diskschwarz.errors import DomainError, ParseError
from diskschwarz.expr import (
    AnalyticMap,
    Bin,
    Call,
    CallableMap,
    Lit,
    Neg,
    Primitive,
    PrimitiveMap,
    Var,
    analytic_map,
    compose_maps,
    eval_jet,
    format_expr,
    parse,
)
from diskschwarz.jet import Jet3
from diskschwarz.quadrature import integrate_segment


# ---------------------------------------------------------------------------
# Parsing


def test_parse_hille_shape():
    ast = parse("((1+z)/(1-z))^(1i)")
    assert isinstance(ast, Bin) and ast.op == "^"
    assert ast.rhs == Lit(1j)
    inner = ast.lhs
    assert isinstance(inner, Bin) and inner.op == "/"


def test_parse_variable():
    assert parse("z") == Var()


def test_parse_primitive_wraps_integrand():
    ast = parse("primitive(1/(1-z^2)^1.5)")
    assert isinstance(ast, Primitive)
    assert isinstance(ast.arg, Bin) and ast.arg.op == "/"


def test_literal_forms():
    assert parse("3") == Lit(3.0 + 0j)
    assert parse("2.5i") == Lit(2.5j)
    assert parse("(1+2i)") == Bin("+", Lit(1.0 + 0j), Lit(2j))
    assert parse("1e-2") == Lit(0.01 + 0j)


def test_precedence_and_associativity():
    assert parse("1+2*z") == Bin("+", Lit(1.0), Bin("*", Lit(2.0), Var()))
    # '^' binds tighter than '*' and is right-associative
    assert parse("2*z^3") == Bin("*", Lit(2.0), Bin("^", Var(), Lit(3.0)))
    assert parse("z^z^2") == Bin("^", Var(), Bin("^", Var(), Lit(2.0)))
    # unary minus applies to the atom
    assert parse("-z^2") == Bin("^", Neg(Var()), Lit(2.0))
    assert parse("1-2-3") == Bin("-", Bin("-", Lit(1.0), Lit(2.0)), Lit(3.0))


def test_calls():
    assert parse("exp(z)") == Call("exp", Var())
    assert parse("sin(cos(z))") == Call("sin", Call("cos", Var()))


def test_whitespace_tolerated():
    assert parse(" 1 + 2 * z ") == parse("1+2*z")


@pytest.mark.parametrize(
    "source",
    [
        "((1+z)/(1-z))^(1i)",
        "primitive(1/(1-z^2)^1.5)",
        "z/(1-z)^2",
        "(1/3)/(1-z)^3",
        "(z^2-z+1/3)/(1-z)^3",
        "-z+exp(-z)*sqrt(1+z)",
        "1-2-3",
        "z^z^2",
        "2*(3/(4/z))",
        "(1+2i)*z",
        "cos(z)-sin(z)/log(2+z)",
    ],
)
def test_roundtrip_idempotence(source):
    ast = parse(source)
    assert parse(format_expr(ast)) == ast


def _random_ast(rng, depth):
    pick = rng.integers(0, 8 if depth > 0 else 2)
    if pick == 0:
        return Var()
    if pick == 1:
        v = round(float(rng.uniform(0, 3)), 3)
        return Lit(complex(0, v)) if rng.integers(0, 2) else Lit(complex(v))
    if pick == 2:
        return Neg(_random_ast(rng, depth - 1))
    if pick in (3, 4, 5):
        op = "+-*/^"[rng.integers(0, 5)]
        return Bin(op, _random_ast(rng, depth - 1), _random_ast(rng, depth - 1))
    if pick == 6:
        fn = ("exp", "log", "sqrt", "sin", "cos")[rng.integers(0, 5)]
        return Call(fn, _random_ast(rng, depth - 1))
    return Bin("+", _random_ast(rng, depth - 1), Lit(1.0 + 0j))


def test_roundtrip_random_asts():
    rng = np.random.default_rng(42)
    for _ in range(200):
        ast = _random_ast(rng, 4)
        assert parse(format_expr(ast)) == ast


def test_parse_errors_carry_offsets():
    with pytest.raises(ParseError) as err:
        parse("1+")
    assert err.value.offset == 2
    assert err.value.expected

    with pytest.raises(ParseError) as err:
        parse("z)")
    assert err.value.offset == 1

    with pytest.raises(ParseError) as err:
        parse("w+1")
    assert err.value.offset == 0

    with pytest.raises(ParseError):
        parse("")
    with pytest.raises(ParseError):
        parse("z + ε")


def test_nested_primitive_rejected():
    with pytest.raises(ParseError):
        parse("primitive(z*primitive(z))")
    # sibling primitives at top level are fine only outside one another
    ast = parse("primitive(z)+primitive(z^2)")
    assert isinstance(ast.lhs, Primitive) and isinstance(ast.rhs, Primitive)


# ---------------------------------------------------------------------------
# Evaluation


def test_eval_hille_normalization():
    m = analytic_map("((1+z)/(1-z))^(1i)")
    assert abs(m.eval_jet(0j).f0 - 1.0) <= 1e-15


def test_eval_square():
    m = analytic_map("z^2", domain_radius=3.0)
    j = m.eval_jet(2.0 + 0j)
    assert j == Jet3(4.0 + 0j, 4.0 + 0j, 2.0 + 0j, 0j)
    assert eval_jet(m, 2.0 + 0j) == j  # module-level alias


def test_eval_primitive_at_zero():
    j = analytic_map("primitive(1/(1-z^2)^1.5)").eval_jet(0j)
    assert abs(j.f0) <= 1e-15
    assert abs(j.f1 - 1.0) <= 1e-15


def test_eval_variable_exponent():
    m = analytic_map("z^z")
    z = 0.5 + 0.2j
    expected = cmath.exp(z * cmath.log(z))
    assert abs(m.eval_jet(z).f0 - expected) <= 1e-14


def test_pole_detected_at_evaluation():
    m = analytic_map("1/(1-2*z)")
    with pytest.raises(DomainError):
        m.eval_jet(0.5 + 0j)


def test_domain_radius_enforced():
    m = analytic_map("z")
    with pytest.raises(DomainError):
        m.eval_jet(1.5 + 0j)
    with pytest.raises(DomainError):
        AnalyticMap(parse("z"), domain_radius=-1.0)


def _random_safe_ast(rng, depth):
    # Random expression whose evaluation near the origin stays tame: function
    # arguments are shifted away from cuts.
    pick = rng.integers(0, 7 if depth > 0 else 2)
    if pick == 0:
        return Var()
    if pick == 1:
        return Lit(complex(round(float(rng.uniform(0.2, 2.0)), 3)))
    if pick == 2:
        return Neg(_random_safe_ast(rng, depth - 1))
    if pick == 3:
        op = "+-*"[rng.integers(0, 3)]
        return Bin(op, _random_safe_ast(rng, depth - 1), _random_safe_ast(rng, depth - 1))
    if pick == 4:
        return Bin("/", _random_safe_ast(rng, depth - 1), Bin("+", Lit(3.0 + 0j), Var()))
    if pick == 5:
        fn = ("exp", "sin", "cos")[rng.integers(0, 3)]
        return Call(fn, _random_safe_ast(rng, depth - 1))
    fn = ("log", "sqrt")[rng.integers(0, 2)]
    return Call(fn, Bin("+", Lit(3.0 + 0j), _random_safe_ast(rng, depth - 1)))


def test_eval_matches_finite_differences():
    rng = np.random.default_rng(2024)
    checked = 0
    while checked < 50:
        ast = _random_safe_ast(rng, 3)
        m = AnalyticMap(ast, domain_radius=math.inf)
        z = complex(rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4))
        try:
            jet = m.eval_jet(z)
        except Exception:
            continue
        if not jet.is_finite() or max(abs(jet.f1), abs(jet.f2), abs(jet.f3)) > 1e5:
            continue
        if max(abs(jet.f1), abs(jet.f2), abs(jet.f3)) < 1e-8:
            continue  # constants carry no derivative signal
        oracle = fd_jet(lambda w: m.eval_jet(w).f0, z, h=5e-3)
        scale = max(abs(jet.f1), abs(jet.f2), abs(jet.f3))
        assert abs(jet.f1 - oracle.f1) <= 1e-6 * scale
        assert abs(jet.f2 - oracle.f2) <= 1e-6 * scale
        assert abs(jet.f3 - oracle.f3) <= 1e-6 * scale
        checked += 1


def test_primitive_derivative_consistency():
    m = analytic_map("primitive(1/(1-z^2)^1.5)")
    integrand = analytic_map("1/(1-z^2)^1.5")
    z = 0.3 + 0.2j
    h = 1e-4

    def value(w):
        return m.eval_jet(w).f0

    fd = (value(z + h) - value(z - h)) / (2 * h)
    assert abs(fd - integrand.eval_jet(z).f0) <= 1e-6


def test_primitive_value_against_quadrature():
    m = analytic_map("primitive(exp(z))")
    z = 0.4 - 0.3j
    expected = cmath.exp(z) - 1.0
    assert abs(m.eval_jet(z).f0 - expected) <= 1e-12


# ---------------------------------------------------------------------------
# Programmatic maps


def test_callable_map_respects_domain():
    m = CallableMap(lambda z: Jet3(z, 1.0), domain_radius=0.5, label="id")
    assert m.eval_jet(0.2 + 0j).f0 == 0.2 + 0j
    with pytest.raises(DomainError):
        m.eval_jet(0.7 + 0j)


def test_callable_and_composed_maps():
    inner = analytic_map("(z-0.5)/(1-0.5*z)")
    outer = analytic_map("z^2", domain_radius=math.inf)
    comp = compose_maps(outer, inner)
    z = 0.3 + 0.1j
    expected = inner.eval_jet(z).f0 ** 2
    assert abs(comp.eval_jet(z).f0 - expected) <= 1e-14
    oracle = fd_jet(lambda w: comp.eval_jet(w).f0, z, h=5e-3)
    got = comp.eval_jet(z)
    assert rel_err(got.f1, oracle.f1) <= 1e-6
    assert rel_err(got.f3, oracle.f3) <= 1e-6


def test_primitive_map_prime_jet_skips_quadrature():
    integrand = analytic_map("exp(z)")
    calls = []

    class Counting:
        domain_radius = 1.0

        def eval_jet(self, z):
            calls.append(z)
            return integrand.eval_jet(z)

        def prime_jet(self, z):
            j = self.eval_jet(z)
            return Jet3(j.f1, j.f2, j.f3, 0j)

    m = PrimitiveMap(integrand=Counting(), basepoint=0j, base_value=0j)
    calls.clear()
    m.prime_jet(0.2 + 0j)
    assert len(calls) == 1  # derivative jet needs a single integrand sample


def test_root_primitive_prime_jet_matches_eval():
    m = analytic_map("primitive(1/(1-z^2)^1.5)")
    z = 0.25 - 0.1j
    full = m.eval_jet(z)
    pj = m.prime_jet(z)
    assert abs(pj.f0 - full.f1) <= 1e-14
    assert abs(pj.f1 - full.f2) <= 1e-14
    assert abs(pj.f2 - full.f3) <= 1e-14


def test_integrate_segment_matches_closed_form():
    val = integrate_segment(lambda w: w * w, 0j, 1.0 + 1.0j)
    expected = (1.0 + 1.0j) ** 3 / 3.0
    assert abs(val - expected) <= 1e-13


def test_integrate_segment_against_scipy():
    # Independent route: QUADPACK on the real and imaginary parts.
    from scipy.integrate import quad

    integrands = [
        lambda w: cmath.exp(w),
        lambda w: 1.0 / (2.0 - w),
        lambda w: cmath.sin(w) * w**3,
        lambda w: 1.0 / (1.0 - w * w) ** 1.5,
    ]
    segments = [(0j, 0.7 + 0.4j), (0.9 + 0j, -0.2 + 0.9j), (0.1j, 0.8 - 0.1j)]
    for f in integrands:
        for a, b in segments:
            ours = integrate_segment(f, a, b)
            span = b - a

            def g(t, part):
                v = f(a + t * span) * span
                return v.real if part == 0 else v.imag

            re, _ = quad(g, 0.0, 1.0, args=(0,), epsabs=1e-13, epsrel=1e-13)
            im, _ = quad(g, 0.0, 1.0, args=(1,), epsabs=1e-13, epsrel=1e-13)
            assert abs(ours - complex(re, im)) <= 1e-10


def test_integrate_segment_divergent_rejected():
    # Endpoint singularity with a non-integrable exponent: the refinement
    # must give up with an error instead of looping.
    from diskschwarz.errors import QuadratureError

    with pytest.raises(QuadratureError):
        integrate_segment(lambda w: 1.0 / (1.0 - w * w) ** 1.5, 1.0 + 0j, 0.5 + 0.5j)


def test_integrate_segment_sharp_peak():
    # Integrand with a pole near (but off) the segment: adaptive refinement
    # must still deliver the requested accuracy.
    pole = 0.5 + 0.02j
    ours = integrate_segment(lambda w: 1.0 / (w - pole), 0j, 1.0 + 0j)
    # closed form: log(1 - pole) - log(-pole), principal branch is fine since
    # the segment does not wind around the pole
    expected = cmath.log(1.0 - pole) - cmath.log(-pole)
    assert abs(ours - expected) <= 1e-10
