"""Exception hierarchy shared by all lovecap modules."""


class LovecapError(Exception):
    """Base class for every error raised by this package."""


class DomainError(LovecapError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class ConvergenceError(LovecapError):
    """An iterative procedure stopped before reaching its tolerance.

    ``best`` holds the last estimate and ``achieved`` the error reached.
    """

    def __init__(self, message, best=None, achieved=None):
        super().__init__(message)
        self.best = best
        self.achieved = achieved


class AccuracyError(LovecapError):
    """The requested evaluation point is outside the accurate region."""


class ValidityError(LovecapError):
    """An asymptotic expansion was evaluated outside its window of validity."""


class DependencyError(LovecapError):
    """A matching equation references more than one unknown coefficient."""

    def __init__(self, message, missing=()):
        super().__init__(message)
        self.missing = tuple(missing)


class OrderingError(LovecapError):
    """The solve ordering produced an equation with zero or several unknowns."""

    def __init__(self, message, equation=None):
        super().__init__(message)
        self.equation = equation
