"""Expression language for analytic maps of the disk.

Grammar (ASCII source, right-associative ^, usual precedence):

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := unary ('^' factor)?
    unary  := '-'? atom
    atom   := 'z' | number 'i'? | func '(' expr ')' | '(' expr ')'
    func   := 'exp'|'log'|'sqrt'|'sin'|'cos'|'primitive'

``primitive(e)`` denotes the map z -> integral of e over the straight segment
from 0 to z; primitives may not be nested. Evaluation produces a Jet3, so a
parsed map carries its first three derivatives everywhere it is defined.

Besides parsed maps this module provides two programmatic map kinds with the
same evaluation surface: CallableMap (an arbitrary z -> Jet3 rule) and
PrimitiveMap (value by quadrature of a jet-evaluable integrand, derivatives
taken from the integrand's jet). They let constructions like the harmonic
shear expose maps whose closed form is unknown.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Protocol, Union

from . import jet
from .errors import DomainError, NumericError, ParseError
from .jet import Jet3
from .quadrature import integrate_segment

# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Lit:
    value: complex


@dataclass(frozen=True)
class Neg:
    arg: "ExprAst"


@dataclass(frozen=True)
class Bin:
    op: str  # one of + - * / ^
    lhs: "ExprAst"
    rhs: "ExprAst"


@dataclass(frozen=True)
class Call:
    func: str  # exp log sqrt sin cos
    arg: "ExprAst"


@dataclass(frozen=True)
class Primitive:
    arg: "ExprAst"


ExprAst = Union[Var, Lit, Neg, Bin, Call, Primitive]

_FUNCS = ("exp", "log", "sqrt", "sin", "cos", "primitive")

# ---------------------------------------------------------------------------
# Tokenizer

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?i?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


@dataclass(frozen=True)
class _Token:
    kind: str  # 'number' | 'name' | one of '+-*/^()' | 'end'
    text: str
    pos: int


def _tokenize(source: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None or m.end() == pos:
            stripped = source[pos:].lstrip()
            if not stripped:
                break
            offset = len(source) - len(stripped)
            raise ParseError(
                f"unexpected character {stripped[0]!r}",
                offset,
                expected=("number", "name", "operator"),
            )
        if m.lastgroup == "op":
            tokens.append(_Token(m.group("op"), m.group("op"), m.start("op")))
        elif m.lastgroup == "number":
            tokens.append(_Token("number", m.group("number"), m.start("number")))
        else:
            tokens.append(_Token("name", m.group("name"), m.start("name")))
        pos = m.end()
    tokens.append(_Token("end", "", len(source)))
    return tokens


# ---------------------------------------------------------------------------
# Parser


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.index = 0
        self.primitive_depth = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        tok = self.current
        self.index += 1
        return tok

    def expect(self, kind: str) -> _Token:
        if self.current.kind != kind:
            raise ParseError(
                f"expected {kind!r}, found {self.current.text or 'end of input'!r}",
                self.current.pos,
                expected=(kind,),
            )
        return self.advance()

    def parse_expr(self) -> ExprAst:
        node = self.parse_term()
        while self.current.kind in ("+", "-"):
            op = self.advance().kind
            node = Bin(op, node, self.parse_term())
        return node

    def parse_term(self) -> ExprAst:
        node = self.parse_factor()
        while self.current.kind in ("*", "/"):
            op = self.advance().kind
            node = Bin(op, node, self.parse_factor())
        return node

    def parse_factor(self) -> ExprAst:
        node = self.parse_unary()
        if self.current.kind == "^":
            self.advance()
            node = Bin("^", node, self.parse_factor())  # right-associative
        return node

    def parse_unary(self) -> ExprAst:
        if self.current.kind == "-":
            self.advance()
            return Neg(self.parse_atom())
        return self.parse_atom()

    def parse_atom(self) -> ExprAst:
        tok = self.current
        if tok.kind == "number":
            self.advance()
            if tok.text.endswith("i"):
                return Lit(complex(0.0, float(tok.text[:-1])))
            return Lit(complex(float(tok.text)))
        if tok.kind == "name":
            if tok.text == "z":
                self.advance()
                return Var()
            if tok.text in _FUNCS:
                self.advance()
                self.expect("(")
                if tok.text == "primitive":
                    if self.primitive_depth:
                        raise ParseError(
                            "nested primitive(...) is not allowed",
                            tok.pos,
                            expected=("expression without primitive",),
                        )
                    self.primitive_depth += 1
                    arg = self.parse_expr()
                    self.primitive_depth -= 1
                    self.expect(")")
                    return Primitive(arg)
                arg = self.parse_expr()
                self.expect(")")
                return Call(tok.text, arg)
            raise ParseError(
                f"unknown name {tok.text!r}",
                tok.pos,
                expected=("z",) + _FUNCS,
            )
        if tok.kind == "(":
            self.advance()
            node = self.parse_expr()
            self.expect(")")
            return node
        raise ParseError(
            f"expected an atom, found {tok.text or 'end of input'!r}",
            tok.pos,
            expected=("z", "number", "function", "("),
        )


def parse(source: str) -> ExprAst:
    """Parse an expression into its AST. Raises ParseError with byte offset."""
    if not source or not source.strip():
        raise ParseError("empty expression", 0, expected=("expression",))
    if not source.isascii():
        bad = next(i for i, ch in enumerate(source) if not ch.isascii())
        raise ParseError("non-ASCII input", bad, expected=("ASCII",))
    parser = _Parser(_tokenize(source))
    node = parser.parse_expr()
    if parser.current.kind != "end":
        raise ParseError(
            f"trailing input {parser.current.text!r}",
            parser.current.pos,
            expected=("end of input",),
        )
    return node


# ---------------------------------------------------------------------------
# Printer

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 3}
_UNARY_PREC = 4


def _fmt_number(x: float) -> str:
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def format_expr(node: ExprAst) -> str:
    """Render an AST back into source. parse(format_expr(t)) == t."""
    text, _ = _render(node)
    return text


def _render(node: ExprAst) -> tuple[str, int]:
    # Returns (text, precedence of outermost operator).
    if isinstance(node, Var):
        return "z", _UNARY_PREC
    if isinstance(node, Lit):
        v = node.value
        if v.imag == 0.0 and v.real >= 0.0:
            return _fmt_number(v.real), _UNARY_PREC
        if v.real == 0.0 and v.imag >= 0.0:
            return _fmt_number(v.imag) + "i", _UNARY_PREC
        # General literal (programmatic ASTs only): spell as a sum/negation.
        return _render(_lit_ast(v))
    if isinstance(node, Neg):
        inner, prec = _render(node.arg)
        if prec < _UNARY_PREC:
            inner = f"({inner})"
        return "-" + inner, 1
    if isinstance(node, Bin):
        lhs, lp = _render(node.lhs)
        rhs, rp = _render(node.rhs)
        prec = _PREC[node.op]
        # '^' is right-associative, the rest left-associative; parenthesize
        # the other side at equal precedence so any tree shape round-trips.
        if lp < prec or (node.op == "^" and lp == prec):
            lhs = f"({lhs})"
        if rp < prec or (node.op != "^" and rp == prec):
            rhs = f"({rhs})"
        return f"{lhs}{node.op}{rhs}", prec
    if isinstance(node, Call):
        return f"{node.func}({format_expr(node.arg)})", _UNARY_PREC
    if isinstance(node, Primitive):
        return f"primitive({format_expr(node.arg)})", _UNARY_PREC
    raise TypeError(f"not an AST node: {node!r}")


def _lit_ast(v: complex) -> ExprAst:
    re_part = Lit(complex(abs(v.real))) if v.real else None
    im_part = Lit(complex(0.0, abs(v.imag))) if v.imag else None
    re_node = Neg(re_part) if v.real < 0 else re_part
    im_node = Neg(im_part) if v.imag < 0 else im_part
    if re_node is None:
        return im_node if im_node is not None else Lit(0j)
    if im_node is None:
        return re_node
    if v.imag < 0:
        return Bin("-", re_node, im_part)
    return Bin("+", re_node, im_node)


# ---------------------------------------------------------------------------
# Evaluation

PRIMITIVE_ABS_TOL = 1e-10

_CALL_FUNCS = {
    "exp": jet.jet_exp,
    "log": jet.jet_log,
    "sqrt": jet.jet_sqrt,
    "sin": jet.jet_sin,
    "cos": jet.jet_cos,
}


def eval_ast(node: ExprAst, z: complex) -> Jet3:
    """Jet of the expression at z. Poles surface as DomainError."""
    if isinstance(node, Var):
        return jet.variable(z)
    if isinstance(node, Lit):
        return jet.constant(node.value)
    if isinstance(node, Neg):
        return -eval_ast(node.arg, z)
    if isinstance(node, Bin):
        if node.op == "^":
            exponent = eval_ast(node.rhs, z)
            base = eval_ast(node.lhs, z)
            if exponent.f1 == 0 and exponent.f2 == 0 and exponent.f3 == 0:
                return jet.jet_pow(base, exponent.f0)
            # Variable exponent: a^b = exp(b log a).
            return jet.jet_exp(jet.jet_mul(exponent, jet.jet_log(base)))
        a = eval_ast(node.lhs, z)
        b = eval_ast(node.rhs, z)
        if node.op == "+":
            return jet.jet_add(a, b)
        if node.op == "-":
            return jet.jet_sub(a, b)
        if node.op == "*":
            return jet.jet_mul(a, b)
        return jet.jet_div(a, b)
    if isinstance(node, Call):
        return _CALL_FUNCS[node.func](eval_ast(node.arg, z))
    if isinstance(node, Primitive):
        inner = eval_ast(node.arg, z)
        value = integrate_segment(
            lambda w: eval_ast(node.arg, w).f0, 0j, z, abs_tol=PRIMITIVE_ABS_TOL
        )
        return Jet3(value, inner.f0, inner.f1, inner.f2)
    raise TypeError(f"not an AST node: {node!r}")


# ---------------------------------------------------------------------------
# Map objects


class JetEvaluable(Protocol):
    """Anything that can produce a Jet3 at a point of its domain."""

    domain_radius: float

    def eval_jet(self, z: complex) -> Jet3: ...

    def prime_jet(self, z: complex) -> Jet3: ...


def _check_domain(z: complex, radius: float) -> None:
    if abs(z) >= radius:
        raise DomainError(f"point {z} outside the declared disk |z| < {radius}")


def _check_finite(j: Jet3, z: complex, label: str) -> Jet3:
    if not j.is_finite():
        raise NumericError(f"{label}: non-finite jet at z = {z}")
    return j


@dataclass(frozen=True)
class AnalyticMap:
    """A parsed expression evaluable to a Jet3 on |z| < domain_radius.

    domain_radius defaults to 1 (the unit disk); gallery maps that live on a
    larger region (the catenoid, for instance) declare a bigger radius.
    """

    ast: ExprAst
    domain_radius: float = 1.0
    source: str = ""

    def __post_init__(self):
        if not self.domain_radius > 0:
            raise DomainError(f"domain radius must be positive, got {self.domain_radius}")
        if not self.source:
            object.__setattr__(self, "source", format_expr(self.ast))

    def eval_jet(self, z: complex) -> Jet3:
        _check_domain(z, self.domain_radius)
        try:
            j = eval_ast(self.ast, complex(z))
        except ZeroDivisionError:
            raise DomainError(f"pole of {self.source!r} at z = {z}") from None
        except OverflowError:
            raise NumericError(f"overflow evaluating {self.source!r} at z = {z}") from None
        return _check_finite(j, z, self.source)

    def prime_jet(self, z: complex) -> Jet3:
        # A top-level primitive has its derivative available directly as the
        # integrand's jet, skipping the value quadrature entirely.
        if isinstance(self.ast, Primitive):
            _check_domain(z, self.domain_radius)
            try:
                j = eval_ast(self.ast.arg, complex(z))
            except ZeroDivisionError:
                raise DomainError(f"pole of {self.source!r} at z = {z}") from None
            return _check_finite(j, z, self.source)
        j = self.eval_jet(z)
        return Jet3(j.f1, j.f2, j.f3, 0j)

    def __call__(self, z: complex) -> complex:
        return self.eval_jet(z).f0


def analytic_map(source: str, domain_radius: float = 1.0) -> AnalyticMap:
    """Parse ``source`` into an AnalyticMap."""
    return AnalyticMap(parse(source), domain_radius, source)


def eval_jet(m: JetEvaluable, z: complex) -> Jet3:
    """Module-level alias for m.eval_jet(z)."""
    return m.eval_jet(z)


@dataclass(frozen=True)
class CallableMap:
    """A map given directly by a z -> Jet3 rule."""

    rule: Callable[[complex], Jet3]
    domain_radius: float = math.inf
    label: str = "<callable>"

    def eval_jet(self, z: complex) -> Jet3:
        _check_domain(z, self.domain_radius)
        return _check_finite(self.rule(complex(z)), z, self.label)

    def prime_jet(self, z: complex) -> Jet3:
        j = self.eval_jet(z)
        return Jet3(j.f1, j.f2, j.f3, 0j)

    def __call__(self, z: complex) -> complex:
        return self.eval_jet(z).f0


@dataclass(frozen=True)
class PrimitiveMap:
    """The map F(z) = base_value + integral of ``integrand`` from basepoint to z.

    The value comes from segment quadrature; derivatives come from the
    integrand's jet shifted one order, so F's jet is valid to order three
    whenever the integrand's is valid to order two.
    """

    integrand: "JetEvaluable"
    basepoint: complex = 0j
    base_value: complex = 0j
    domain_radius: float = math.inf
    label: str = "<primitive>"

    def eval_jet(self, z: complex) -> Jet3:
        _check_domain(z, self.domain_radius)
        inner = self.integrand.eval_jet(z)
        value = self.base_value + integrate_segment(
            lambda w: self.integrand.eval_jet(w).f0,
            self.basepoint,
            complex(z),
            abs_tol=PRIMITIVE_ABS_TOL,
        )
        return _check_finite(Jet3(value, inner.f0, inner.f1, inner.f2), z, self.label)

    def prime_jet(self, z: complex) -> Jet3:
        # No quadrature needed: F' is the integrand itself.
        return self.integrand.eval_jet(z)

    def __call__(self, z: complex) -> complex:
        return self.eval_jet(z).f0


@dataclass(frozen=True)
class ComposedMap:
    """outer(inner(z)) with the jet combined by Faa di Bruno."""

    outer: "JetEvaluable"
    inner: "JetEvaluable"
    label: str = "<composition>"

    @property
    def domain_radius(self) -> float:
        return self.inner.domain_radius

    def eval_jet(self, z: complex) -> Jet3:
        ji = self.inner.eval_jet(z)
        jo = self.outer.eval_jet(ji.f0)
        return jet.compose(jo, ji)

    def prime_jet(self, z: complex) -> Jet3:
        j = self.eval_jet(z)
        return Jet3(j.f1, j.f2, j.f3, 0j)

    def __call__(self, z: complex) -> complex:
        return self.eval_jet(z).f0


def compose_maps(outer: JetEvaluable, inner: JetEvaluable, label: str = "") -> ComposedMap:
    return ComposedMap(outer, inner, label or "<composition>")
