"""Exception hierarchy shared by the library, the CLI and the HTTP API."""
from typing import Any, Optional


class AGCodesError(ValueError):
    """Base class for every error raised on purpose by agcodes."""


class DomainError(AGCodesError):
    """A precondition or a parameter domain is violated."""


class CapabilityError(AGCodesError):
    """A curve backend cannot handle the requested divisor shape."""


class GuardExceededError(AGCodesError):
    """A brute-force enumeration would exceed its configured threshold."""

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"{what}: {size} exceeds enumeration limit {limit}")
        self.size = size
        self.limit = limit


class BoundRefusedError(AGCodesError):
    """A floor-bound hypothesis failed, so the bound is not returned."""

    def __init__(self, message: str, report: Optional[Any] = None):
        super().__init__(message)
        self.report = report


class ErasureDecodingError(AGCodesError):
    pass


class NoSolutionError(ErasureDecodingError):
    """No error vector supported on the erasure set explains the word."""


class AmbiguousSolutionError(ErasureDecodingError):
    """Several error vectors supported on the erasure set explain the word."""


class AssertionFailure(AGCodesError):
    """A construction-time identity did not hold."""


class RecoverySetDamagedError(ErasureDecodingError):
    """The chosen recovery set holds an erased symbol too; try the other partition."""
