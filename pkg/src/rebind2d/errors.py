"""Exception types shared across the package."""


class Rebind2DError(Exception):
    """Base class for all package errors."""


class DomainError(Rebind2DError):
    """An argument lies outside the mathematical domain of the operation."""


class BranchError(Rebind2DError):
    """A Laplace variable sits on the branch cut (negative real axis)."""


class SingularityError(Rebind2DError):
    """A denominator underflowed where the theory predicts none should."""


class AccuracyError(Rebind2DError):
    """A numerical scheme could not reach the requested tolerance."""
