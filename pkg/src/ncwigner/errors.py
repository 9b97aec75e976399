"""Error types shared across the package."""


class InvalidPhysics(ValueError):
    """Parameters left the physically admissible region."""


class GridCoverageError(RuntimeError):
    """A phase-space grid is too small or too coarse for the requested
    reduction to be trusted (its Riemann mass misses 1 by more than the
    allowed budget)."""
