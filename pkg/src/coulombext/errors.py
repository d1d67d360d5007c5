"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested exactly at (or too close to) a pole."""


class ConvergenceError(ArithmeticError):
    """A series, asymptotic expansion, or iteration failed to reach its target."""


class BracketError(ConvergenceError):
    """A detected sign change could not be refined to tolerance."""


class GridError(ConvergenceError):
    """Grid refinement did not stabilize the extrapolated value."""


class InconclusiveError(ConvergenceError):
    """Numerical evidence shows no monotone trend; no verdict returned."""


class EigenvalueHit(DomainError):
    """Resolvent-type quantity requested at (or too near) an eigenvalue."""


class NotAnEigenpair(DomainError):
    """Supplied (E, c) does not satisfy the eigenvalue condition."""


class NormalizationError(DomainError):
    """Parameters violate a required normalization constraint."""
