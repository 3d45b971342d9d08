"""Exception hierarchy shared by every module of the package."""


class AlphaFractalError(Exception):
    """Base class for all errors raised by alphafractal."""


class ExprError(AlphaFractalError):
    """Base class for expression parsing and evaluation errors."""


class ExprSyntaxError(ExprError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownIdentifier(ExprSyntaxError):
    pass


class ArityMismatch(ExprSyntaxError):
    pass


class ExprDomainError(ExprError, ValueError):
    """Raised when an expression is evaluated outside its domain."""

    def __init__(self, subexpr, x):
        super().__init__(f"domain error in '{subexpr}' at x={x!r}")
        self.subexpr = subexpr
        self.x = x


class SpecError(AlphaFractalError, ValueError):
    """Invalid problem instance."""


class NonMonotonePartition(SpecError):
    pass


class ScaleOutOfRange(SpecError):
    pass


class BaseEndpointMismatch(SpecError):
    def __init__(self, endpoint, x, residual):
        super().__init__(
            f"base and germ disagree at the {endpoint} endpoint x={x!r} "
            f"(residual {residual:.3e})"
        )
        self.endpoint = endpoint
        self.x = x
        self.residual = residual


class LengthMismatch(SpecError):
    pass


class SpecMismatch(SpecError):
    """Two specs that must share partition/scale/functions do not."""


class NotAffine(SpecError):
    pass


class OutOfDomain(AlphaFractalError, ValueError):
    def __init__(self, x, lo, hi):
        super().__init__(f"x={x!r} lies outside [{lo!r}, {hi!r}]")
        self.x = x


class NoConvergence(AlphaFractalError, RuntimeError):
    pass


class MaxDepthExceeded(AlphaFractalError, RuntimeError):
    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
