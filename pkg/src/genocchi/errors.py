"""Exception hierarchy shared by every module."""


class GenocchiError(Exception):
    """Base class for all errors raised by this package."""


class InsufficientDerivativeOrder(GenocchiError):
    def __init__(self, needed, available):
        super().__init__(
            f"derivative of order {needed} required, oracle supplies up to {available}"
        )
        self.needed = needed
        self.available = available


class ConfluentNodes(GenocchiError):
    pass


class MaxDepthExceeded(GenocchiError):
    def __init__(self, a, b, depth):
        super().__init__(
            f"adaptive quadrature on [{a!r}, {b!r}] did not converge within depth {depth}"
        )
        self.a = a
        self.b = b
        self.depth = depth


class EmptyInterval(GenocchiError):
    pass


class EvaluationDomainError(GenocchiError, ArithmeticError):
    """An expression was evaluated outside its domain (log(-1), 1/0, ...)."""


class NonDifferentiable(EvaluationDomainError):
    """A derivative expression hit a guarded point (e.g. d/dx sqrt(x) at 0)."""


class ExprSyntaxError(GenocchiError, SyntaxError):
    """Malformed expression text.

    ``offset`` is the 0-based byte offset of the offending token and
    ``expected`` the set of token kinds that would have been accepted there.
    """

    def __init__(self, message, text, offset, expected=()):
        self.expected = frozenset(expected)
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += f"; expected one of: {', '.join(sorted(self.expected))}"
        super().__init__(detail)
        self.text = text
        self.offset = offset
        self.msg = detail
