"""Exception hierarchy.

Every error is a ``ValueError`` subclass so callers that only care about
"bad input" can catch one type.
"""


class HyperavgError(ValueError):
    pass


class EmptyEdge(HyperavgError):
    pass


class VertexOutOfRange(HyperavgError):
    pass


class DuplicateVertexInEdge(HyperavgError):
    pass


class SameVertex(HyperavgError):
    pass


class NoEdges(HyperavgError):
    pass


class TooFewVertices(HyperavgError):
    pass


class IsolatedVertex(HyperavgError):
    pass


class BadParameters(HyperavgError):
    pass


class NonIntegralCount(HyperavgError):
    pass


class NotRegular(HyperavgError):
    pass


class NotUniform(HyperavgError):
    pass


class NotCodegreeRegular(HyperavgError):
    pass


class Disconnected(HyperavgError):
    pass


class DegenerateRate(HyperavgError):
    pass


class ZeroVector(HyperavgError):
    pass


class BudgetExceeded(HyperavgError):
    pass


class ParseError(HyperavgError):
    def __init__(self, reason: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        self.reason = reason
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {reason}".strip())


class UnknownBuiltin(HyperavgError):
    pass


class NoConvergence(ArithmeticError):
    def __init__(self, residual: float, sweeps: int):
        self.residual = residual
        self.sweeps = sweeps
        super().__init__(
            f"Jacobi iteration did not converge after {sweeps} sweeps "
            f"(max off-diagonal {residual:.3e})"
        )


class SpectralConnectivityMismatch(ArithmeticError):
    """Spectral and combinatorial connectivity disagree; numerical failure."""
