"""Exception types shared across the package.

The CLI maps these onto exit codes: usage problems (ParseError, bad flags) give 2,
CapacityError gives 3, InconsistentDataError and DegenerateFunctionError give 4,
and every other check failure (PropertyViolation, SolverFailure, failed verify
suites) gives 1.
"""

from __future__ import annotations


class BlocksensError(Exception):
    """Base class for all package errors."""


class CapacityError(BlocksensError):
    """An operation would enumerate more inputs than its cap allows."""

    def __init__(self, arity: int, cap: int, what: str = "operation"):
        self.arity = arity
        self.cap = cap
        super().__init__(
            f"{what} needs 2^{arity} input rows but is capped at arity {cap}; "
            f"raise the cap explicitly if this size is intended"
        )


class ParseError(BlocksensError):
    """A text input (tt / dnf / ball file) is malformed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PropertyViolation(BlocksensError):
    """A structural precondition on a DNF does not hold.

    Carries enough detail to name the offending term pair or variable.
    """

    def __init__(self, prop: str, detail: str):
        self.prop = prop
        self.detail = detail
        super().__init__(f"{prop} property violated: {detail}")


class DegenerateFunctionError(BlocksensError):
    """The function is constant (or otherwise trivial) where the operation needs structure."""


class InconsistentDataError(BlocksensError):
    """Supplied data contradicts the promised hypothesis (bad ball file, tie during
    majority reconstruction, non-monotone completion, ...)."""


class SolverFailure(BlocksensError):
    """The sensitivity-problem solver found no input satisfying the requested inequality."""


class InternalInvariantError(BlocksensError):
    """A postcondition that should hold by construction failed; signals a bug here."""
