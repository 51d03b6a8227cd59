"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class LowPrevError(Exception):
    """Base class for all library errors."""


class ValidationError(LowPrevError, ValueError):
    """Malformed input: bad masses, mismatched domains, unknown names."""


class InvalidCategoryError(ValidationError):
    """A label that is not a member of the category space."""


class DomainMismatchError(ValidationError):
    """Two objects that must live on the same domain do not."""


class DegreeError(ValidationError):
    """A requested polynomial degree is too small or exceeds a horizon."""


class CapacityError(LowPrevError):
    """An enumeration would exceed the configured cap."""


class SureLossError(LowPrevError):
    """An assessment set admits no dominating linear prevision."""


class InconsistentFamilyError(LowPrevError):
    """A count family is not time consistent."""


class ExpressionError(ValidationError):
    """Malformed expression text or an illegal evaluation (division by zero)."""
