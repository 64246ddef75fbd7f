"""Exception hierarchy.

InputError covers malformed input (bad expressions, off-curve points,
unusable manifests).  HypothesisError covers mathematically valid input
that violates a hypothesis an operation needs (singular model, isotrivial
curve, non-semistable reduction, ...).  ConsistencyError signals an internal
identity that should always hold has failed, which means a bug or an
inconsistent model rather than bad user input.
"""


class Error(Exception):
    """Base class for all package errors."""


class InputError(Error):
    """Malformed or unusable input."""


class ParseError(InputError):
    """Expression syntax error; carries the offending position."""

    def __init__(self, message, position=None):
        if position is not None:
            message = "%s (at position %d)" % (message, position)
        super().__init__(message)
        self.position = position


class HypothesisError(Error):
    """A mathematical hypothesis of the requested operation fails."""


class NotFoundError(Error):
    """A bounded search ended without a result; widening the bounds may help."""


class ConsistencyError(Error):
    """An internal invariant failed; indicates a bug or inconsistent model."""
