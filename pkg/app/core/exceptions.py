"""
Error taxonomy shared by the services, the HTTP endpoints and the command line

Exception               HTTP   CLI exit
----------------------  -----  --------
InvalidInputError       422    2
BoundExceededError      422    2
ChainComplexError       500    1
VerificationFailure     200*   1

(*) a failing report is still a successful request; the body carries `passed: false`.
"""


class CorneredError(Exception):
    """Base class for every error raised by the services."""

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class InvalidInputError(CorneredError):
    """Malformed object, out-of-range index or inconsistent data."""


class BoundExceededError(InvalidInputError):
    """A requested size is above the configured safety bound."""


class ChainComplexError(CorneredError):
    """A differential squares to a nonzero map or leaves the declared basis."""


class VerificationFailure(CorneredError):
    """A verification report contains failing cases."""


def check_bound(name: str, value: int, bound: int) -> None:
    """Raise BoundExceededError when `value` is outside [0, bound]."""
    if value < 0:
        raise InvalidInputError(f"{name} must be non-negative, got {value}")
    if value > bound:
        raise BoundExceededError(f"{name}={value} exceeds the configured bound {bound}")
