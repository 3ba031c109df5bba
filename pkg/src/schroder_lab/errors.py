"""Exception types shared across the package."""


class SchroderLabError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateParameter(SchroderLabError):
    """A coefficient recursion hit a vanishing divisor (s is 0, 1, -1 or a
    root of unity picked up by some 1 - s^n)."""

    def __init__(self, s, n, divisor: str):
        self.s = s
        self.n = n
        self.divisor = divisor
        super().__init__(f"divisor {divisor} vanishes at n={n} for s={s}")


class CancellationFailure(SchroderLabError):
    """The exact (1-s) division in the numerator-polynomial recursion left a
    remainder.  This always indicates an implementation bug, never bad input."""


class OutOfRadius(SchroderLabError):
    """Series evaluation requested outside the guarded convergence zone."""


class DomainError(SchroderLabError):
    """Argument outside the real domain of a formula or transform."""


class ComplexValued(SchroderLabError):
    """The requested potential branch is complex-valued on the interval of
    interest (some nested radicand goes negative)."""


class ScheduleInconsistency(SchroderLabError):
    """Turning points failed to match while ordering potentials along the
    path, or no consistent ordering exists."""


class NonConvergence(SchroderLabError):
    """A quadrature or functional-extension iteration failed to reach its
    accuracy target within the allowed work."""
