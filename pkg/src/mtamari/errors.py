"""Exception types shared by the package."""


class UsageError(ValueError):
    """Bad arguments: out-of-range positions, malformed sequences, non-covers."""


class NotACover(UsageError):
    pass


class EmptyIntervalError(UsageError):
    """Raised when an interval [a, b] is requested with a not below b."""

    def __init__(self, a, b):
        super().__init__("empty interval: %s is not below %s" % (a, b))
        self.a = a
        self.b = b


class CapExceeded(RuntimeError):
    """A size guardrail refused the request (never truncates silently)."""

    def __init__(self, what, required, cap):
        super().__init__(
            "%s needs %d items, cap is %d; raise the cap to at least %d"
            % (what, required, cap, required)
        )
        self.required = required
        self.cap = cap


class InvariantViolation(AssertionError):
    """A structural property that must hold (lattice axioms, chain counts) failed."""
