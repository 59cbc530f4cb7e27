"""Semantic exception hierarchy.

Every error deliberately raised by this package derives from RaglightError,
so callers can distinguish contract violations from genuine bugs with a
single except clause. ValidationError doubles as ValueError for callers
that do not know this package.
"""

from __future__ import annotations

import math


class RaglightError(Exception):
    """Base error for the package."""


class ValidationError(RaglightError, ValueError):
    """Input violates a documented invariant.

    ``field`` optionally carries a JSON-pointer-style path ("/rates/p0")
    naming the offending document location; it is filled in by the document
    layer and left None for errors raised on plain constructor arguments.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field

    @property
    def message(self) -> str:
        return self.args[0]


class DegenerateModelError(RaglightError):
    """The two evidence distributions coincide (zero separation).

    Raised by operations that need an interior optimum or a non-constant
    likelihood ratio; callers wanting a verdict for the coincident case
    should use the determination path, which handles it explicitly.
    """


class NonMonotoneScalingError(RaglightError):
    """A caller-supplied scale-to-costs map produced a verdict sequence
    that is not a single contiguous red/amber/green progression."""


def require_finite(name: str, value) -> float:
    """Coerce to float and reject NaN/inf with a field-tagged error."""
    value = float(value)
    if not math.isfinite(value):
        raise ValidationError(f"{name} must be finite, got {value!r}", field=name)
    return value
