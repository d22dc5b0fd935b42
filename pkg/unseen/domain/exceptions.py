"""Domain-level exceptions for the unseen package."""


class UnseenError(Exception):
    """Base exception for all unseen domain errors."""

    pass


class InvalidDistributionError(UnseenError, ValueError):
    """Raised when a probability vector violates its invariants."""

    pass


class InfiniteCrossEntropyError(UnseenError):
    """Raised when q assigns zero probability to an index where p is positive."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"Cross entropy is infinite: q[{index}] is 0 where p[{index}] > 0")


class InvalidCountsError(UnseenError, ValueError):
    """Raised when raw counts cannot form a frequency vector."""

    pass


class InvalidParamsError(UnseenError, ValueError):
    """Raised when Pitman-Yor parameters or selection settings are out of domain."""

    pass


class TruncationError(UnseenError):
    """Raised when the truncation index is too small for the tail approximation."""

    pass


class SamplerError(UnseenError):
    """Raised when a stick-breaking draw hits its iteration cap."""

    pass


class UpperBoundDomainError(UnseenError):
    """Raised when the upper bound function is evaluated outside its domain."""

    pass


class ScenarioConfigError(UnseenError):
    """Raised when a scenario document violates the schema."""

    pass


class CountsFileError(UnseenError):
    """Raised when a counts file cannot be read or parsed."""

    pass
