"""Exception types shared across the package."""


class VelfieldError(Exception):
    """Base class for all velfield errors."""


class InvalidOrderError(VelfieldError, ValueError):
    """Spherical-harmonic order exceeds its degree (|m| > n)."""


class SingularArgumentError(VelfieldError, ValueError):
    """Special function evaluated at a singular argument (e.g. h_n^(2) at 0)."""


class SingularSourceError(VelfieldError, ValueError):
    """Point source placed at the expansion origin (r_ps = 0)."""


class DegreeTooSmallError(VelfieldError, ValueError):
    """Truncation degree too small for the requested operation."""


class ShapeError(VelfieldError, ValueError):
    """Vector/matrix dimensions do not match."""


class DomainError(VelfieldError, ValueError):
    """Geometric precondition violated (point outside validity region, source inside region, ...)."""


class EmptyDiskError(VelfieldError, ValueError):
    """No valid evaluation points within the requested disk."""


class UndefinedConditioningError(VelfieldError, ValueError):
    """Condition number requested for an all-zero matrix."""


class ScenarioError(VelfieldError, ValueError):
    """Scenario file failed to parse or validate."""


class ExcludedPoint(VelfieldError):
    """Signal: direction error is undefined at this point (zero real velocity).

    Not a numeric failure; callers averaging over a region catch this and
    exclude the point from the mean.
    """
