"""Exception types shared across the library.

The CLI maps these onto exit codes: InputError -> 2/3, RegimeError and
its subclasses -> 4, check failures -> 1.
"""


class CuspScatError(Exception):
    """Base class for library errors."""


class InputError(CuspScatError, ValueError):
    """Malformed or inconsistent input (bad shapes, missing metadata)."""


class DomainError(CuspScatError, ValueError):
    """Input outside the mathematical domain of an operation."""


class RegimeError(CuspScatError, RuntimeError):
    """Requested evaluation lies outside the trustworthy numerical regime."""


class AccuracyError(RegimeError):
    """Grid or truncation too coarse to meet the accuracy contract."""


class TruncationError(RegimeError):
    """A series or domain truncation failed to converge."""


class PoleError(RegimeError):
    """Evaluation requested at (or too close to) a resolvent pole.

    Carries the nearest located pole when known.
    """

    def __init__(self, message, nearest=None):
        super().__init__(message)
        self.nearest = nearest


class MatchingError(RegimeError):
    """Wronskian matching against the radial basis is ill conditioned."""


class WindingError(CuspScatError, RuntimeError):
    """Argument-principle count disagrees with the refined zero list.

    ``partial`` holds whatever zeros were confirmed before the mismatch.
    """

    def __init__(self, message, partial=()):
        super().__init__(message)
        self.partial = list(partial)
