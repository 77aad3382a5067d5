"""Exception types raised across the package."""


class HmnetError(Exception):
    """Base class for all package errors."""


class ParameterError(HmnetError, ValueError):
    """An argument is outside its documented domain."""


class InfeasibleError(HmnetError):
    """The request has no solution (odd-sum list at the cap, non-graphical sequence)."""


class ConstructionError(HmnetError):
    """A randomized construction gave up after its restart budget."""


class UndefinedMetricError(HmnetError, ArithmeticError):
    """A metric is undefined for the given input (no edges, zero variance, ...)."""
