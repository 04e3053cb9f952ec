"""Exception types shared across the package.

The CLI maps these onto exit codes: usage/validation problems (including
``InvalidSpecError`` and plain ``ValueError``) exit 2, size-limit refusals
exit 3, and a failed verification certificate exits 1.
"""
from __future__ import annotations


class CantorError(Exception):
    """Base class for package-specific errors."""


class InvalidSpecError(CantorError, ValueError):
    """A construction or concatenation spec violates its invariants."""


class SizeLimitError(CantorError):
    """An operation would materialize or enumerate more than the size cap allows."""

    def __init__(self, required: int, cap: int, what: str = "digits"):
        self.required = required
        self.cap = cap
        self.what = what
        super().__init__(
            f"operation needs {required} {what} but the size cap is {cap}; "
            f"pass a larger cap or set CNL_SIZE_CAP"
        )


class NeedsMoreDigitsError(CantorError):
    """A computation ran past the available digit/entry horizon.

    ``required`` is the 1-based index the computation needed to reach.
    """

    def __init__(self, required: int, available: int | None = None, what: str = "digits"):
        self.required = required
        self.available = available
        avail = "" if available is None else f" (only {available} available)"
        super().__init__(f"needs {what} up to position {required}{avail}")


class NeedsMoreSegmentsError(NeedsMoreDigitsError):
    """A construction spec is too short for the requested prefix length."""

    def __init__(self, required: int, available: int):
        super().__init__(required, available, what="assembled digits")
