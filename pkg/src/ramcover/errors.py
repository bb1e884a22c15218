"""Exception types shared across the package."""

from __future__ import annotations


class RamcoverError(Exception):
    """Base class for all package errors."""


class InvariantError(RamcoverError, ValueError):
    """An input object violates a structural invariant."""


class LimitExceeded(RamcoverError, ValueError):
    """A size limit on an exact or exhaustive routine was exceeded."""


class Inapplicable(RamcoverError, ValueError):
    """A claim's hypothesis does not hold for the given input."""
