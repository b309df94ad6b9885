"""Exception types raised by kappagen.

All library errors derive from :class:`KappagenError` so callers can catch one
base class. The CLI maps subclasses onto its exit codes.
"""


class KappagenError(Exception):
    """Base class for all kappagen errors."""


class ValidationError(KappagenError, ValueError):
    """An input (marginal, table, kappa matrix, dataset) violates a contract."""


class UndefinedKappaError(KappagenError, ZeroDivisionError):
    """Chance agreement equals 1, so kappa's denominator vanishes."""


class InfeasibleTargetError(KappagenError, ValueError):
    """A requested kappa or correlation lies outside its feasible bounds."""


class MethodFailureError(KappagenError, RuntimeError):
    """A generation method cannot reach the target (an alternative may)."""


class JointInfeasibleError(KappagenError, RuntimeError):
    """No contingency table satisfies the requested marginal/agreement system."""


class IterationLimitError(KappagenError, RuntimeError):
    """The simplex solver hit its iteration cap before termination."""


class SizeCapError(KappagenError, ValueError):
    """The requested table has more cells than the configured safety cap."""
