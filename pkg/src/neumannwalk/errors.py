"""Exception types shared across the package."""

from __future__ import annotations


class CompatibilityViolation(Exception):
    """The boundary datum does not integrate to zero over the boundary.

    Solving is refused unless explicitly overridden; ``value`` carries the
    measured surface integral and ``bound`` the acceptance threshold.
    """

    def __init__(self, value: float, bound: float):
        self.value = value
        self.bound = bound
        super().__init__(
            f"boundary datum violates the zero-mean compatibility condition: "
            f"surface integral {value:.6g} exceeds bound {bound:.3g}"
        )


class GeometryInconsistencyError(Exception):
    """A layer construction left the domain (layer width too large locally)."""
