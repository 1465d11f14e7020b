"""Exception types shared across the package.

The CLI maps these onto distinct exit codes, so library code should raise
the most specific class that applies.
"""


class DomainError(ValueError):
    """Inputs violate a mathematical precondition (couplings, indices, ranges)."""


class RegimeError(DomainError):
    """Operation is undefined in the spectral regime of the given couplings."""


class PoleError(DomainError):
    """Evaluation point coincides with a pole of the requested expression."""


class SingularBranchError(DomainError):
    """Superpotential branch is singular (2a - 1 = 0), no partner exists."""


class ConvergenceError(RuntimeError):
    """An iterative numerical procedure failed to reach its tolerance."""
