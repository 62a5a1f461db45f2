"""Exception hierarchy shared by every straightedge module."""


class StraightEdgeError(Exception):
    """Base class for all errors raised by the package."""


class GraphBuildError(StraightEdgeError, ValueError):
    pass


class DuplicateEdge(GraphBuildError):
    pass


class SelfLoop(GraphBuildError):
    pass


class ZeroLengthEdge(GraphBuildError):
    pass


class IndexOutOfRange(StraightEdgeError, IndexError):
    pass


class InvalidPointRef(StraightEdgeError, ValueError):
    pass


class Disconnected(StraightEdgeError):
    """Raised where a break-even distance is requested across components."""


class SameEdge(StraightEdgeError, ValueError):
    """Break-even distance requested for a point lying on the target edge."""


class BudgetExceeded(StraightEdgeError, MemoryError):
    """A precomputed distance table would not fit the memory budget."""

    def __init__(self, required: int, budget: int):
        super().__init__(
            f"distance table needs {required} bytes, budget is {budget} bytes"
        )
        self.required = required
        self.budget = budget


class NonPositiveDenominator(StraightEdgeError, ArithmeticError):
    pass


class BranchUndefined(StraightEdgeError, ArithmeticError):
    pass


class QuadratureNonConvergence(StraightEdgeError, ArithmeticError):
    def __init__(self, message: str, error_estimate: float):
        super().__init__(f"{message} (achieved error estimate {error_estimate:.3e})")
        self.error_estimate = error_estimate


class DegenerateConfiguration(StraightEdgeError, ValueError):
    pass


class ParseError(StraightEdgeError, ValueError):
    pass


class MissingCoordinateAttribute(ParseError):
    pass


class LengthMismatch(StraightEdgeError, ValueError):
    pass


class IoError(StraightEdgeError, OSError):
    pass
