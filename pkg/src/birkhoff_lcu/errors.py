"""Exception types raised across the package."""


class InvalidInput(ValueError):
    """Matrix is malformed: negative, non-finite, non-square or with an empty row/column."""


class NonConvergence(RuntimeError):
    """Sinkhorn scaling did not reach the requested tolerance within its iteration cap."""


class UnsupportedShape(ValueError):
    """Completion requested for a matrix whose row and column sums differ per index."""


class NotDoublyStochastic(ValueError):
    pass


class Degenerate(ValueError):
    """No perfect matching exists on the support graph at the first step."""


class ToleranceTooTight(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class NotNormalized(ValueError):
    pass


class NotPowerOfTwo(ValueError):
    pass


class IterationLimitExceeded(RuntimeError):
    """A decomposition ran past N**2 + 1 steps, which the worst-case bound forbids."""
