"""Exception types.

Input-validation problems derive from ``ValueError``; numerical failures
(series that do not converge, cycles with a vanishing denominator, overflow)
derive from ``ArithmeticError``.  The CLI maps the first family to exit
status 2 and the second to exit status 1.
"""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class ModeError(ValueError):
    """Operation not available for the way the potential was specified."""


class SeriesNotConverged(ArithmeticError):
    """The adaptive series hit its term cap before the stop rule fired."""


class DegenerateCycleError(ArithmeticError):
    """A ratio (efficiency, COP) has a vanishing denominator."""
