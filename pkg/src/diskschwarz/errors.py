"""Exception hierarchy shared by every module.

Two broad failure classes matter to callers: bad inputs (exit code 2 in the
CLI, HTTP 400 in the service) and numerical breakdowns (exit code 3 / HTTP 500).
Everything raised by this package derives from ToolkitError.
"""


class ToolkitError(Exception):
    """Base class for all errors raised by diskschwarz."""


class InputError(ToolkitError):
    """Invalid user input: bad expression, point outside domain, bad flag value."""


class DomainError(InputError):
    """Evaluation requested at a point where the operation is undefined
    (pole, branch cut, outside the declared disk, |a| >= 1, ...)."""


class LocalUnivalenceError(DomainError):
    """A Schwarzian was requested where the derivative vanishes."""


class ParseError(InputError):
    """Syntax error in the expression language.

    Carries the byte offset of the failure and the set of token kinds that
    would have been accepted there.
    """

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset
        self.expected = expected


class NumericError(ToolkitError):
    """A numerical procedure failed to converge or lost too much accuracy."""


class QuadratureError(NumericError):
    """Adaptive quadrature did not reach the requested tolerance."""


class ContourNearRootError(NumericError):
    """The valence contour passes too close to a solution of f(z) = w;
    retry with a different radius."""
