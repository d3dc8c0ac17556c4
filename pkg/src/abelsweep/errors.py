"""Exception types shared across the package.

``DomainError`` subclasses signal mathematically invalid inputs (as opposed
to I/O or configuration mistakes); the CLI maps them to exit code 2.
"""

from __future__ import annotations


class DomainError(Exception):
    """A mathematically invalid request (bad base, bad shift, singular system)."""


class RootOfUnityError(DomainError):
    """The base b satisfies b**k == 1 for some k in range, so 1/(1 - b**k) blows up."""

    def __init__(self, b, k):
        self.b = b
        self.k = k
        super().__init__(f"base {b!r} is a root of unity: b**{k} == 1")


class ZeroShiftError(DomainError):
    """Development point s == 0; the shifted system has a vanishing first row."""

    def __init__(self):
        super().__init__("development point s must be nonzero")


class SingularSystemError(DomainError):
    """A truncated linear system is singular or numerically rank-deficient."""

    def __init__(self, size, cond_estimate=None):
        self.size = size
        self.cond_estimate = cond_estimate
        msg = f"truncated system of size N={size} is singular"
        if cond_estimate is not None:
            msg += f" (condition estimate {cond_estimate})"
        super().__init__(msg)


class BracketError(DomainError):
    """Numerical inversion failed: no sign change over the supplied bracket."""

    def __init__(self, lo, hi, target):
        self.lo = lo
        self.hi = hi
        self.target = target
        super().__init__(
            f"no sign change for target {target} on bracket [{lo}, {hi}]"
        )
