"""Exception types raised by the sumfree-cli library."""

from typing import Any, Optional


class SumfreeError(Exception):
    """Base class for all library errors."""


class PreconditionError(SumfreeError, ValueError):
    """An operation was called with inputs violating its preconditions.

    Args:
        message: Human readable description
        flat: Optional counterexample flat (e.g. a vanishing flat)
        component: Optional component vector v with too low degree
    """

    def __init__(
        self,
        message: str,
        flat: Optional[Any] = None,
        component: Optional[int] = None,
    ):
        super().__init__(message)
        self.flat = flat
        self.component = component


class CapExceededError(SumfreeError):
    """An enumeration, codeword, node or search cap was hit."""

    def __init__(self, what: str, cap: int, required: Optional[int] = None):
        detail = f" (needs {required})" if required is not None else ""
        super().__init__(f"{what} exceeds cap {cap}{detail}")
        self.what = what
        self.cap = cap
        self.required = required


class FormatError(SumfreeError, ValueError):
    """A function, matrix, certificate or catalog file is malformed."""

    def __init__(self, message: str, line: Optional[int] = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")
        self.line = line
