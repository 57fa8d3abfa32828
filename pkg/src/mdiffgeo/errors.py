"""Shared exception types for exact-geometry and estimator failure modes."""


class GeometryError(Exception):
    """Base class for all toolkit errors."""


class EmptyInput(GeometryError):
    """No points were supplied where at least one is required."""


class DegenerateInput(GeometryError):
    """Input is not full-dimensional (callers must project first)."""


class DimensionMismatch(GeometryError):
    """Operands live in different ambient dimensions."""


class Unbounded(GeometryError):
    """A polyhedron or LP is unbounded where boundedness is required."""


class OriginNotInterior(GeometryError):
    """Polarity was requested for a body without the origin strictly inside."""


class BudgetExceeded(GeometryError):
    """Exact computation would exceed the configured dimension budget."""


class BallUnsupported(GeometryError):
    """Operation needs polytope bodies; use the membership oracle for balls."""


class MixedVariantsUnsupported(GeometryError):
    """Bodies must be all polytopes or all equal-radius balls."""


class InvalidQ(GeometryError):
    """Density exponent q outside the integrable range [0, n)."""


class NotOriginSymmetric(GeometryError):
    """Body is not symmetric about the origin and the operation needs it."""


class NotEven(GeometryError):
    """Grid function is not even on a symmetric grid."""


class NonIntegrable(GeometryError):
    """Function tails do not decay; the integral would diverge."""


class IllConditioned(GeometryError):
    """Matrix condition number too large for the requested float tolerance."""


class ConfigInvalid(GeometryError):
    """Suite configuration could not be understood."""


class ParseError(GeometryError):
    """Input file is not valid toolkit JSON."""
