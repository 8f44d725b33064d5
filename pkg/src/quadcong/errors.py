"""Exception types shared across the package."""


class QuadcongError(Exception):
    """Base class for all package errors."""


class NonUnit(QuadcongError, ValueError):
    """An element that must be invertible modulo p^n is divisible by p."""


class PoleModP(QuadcongError, ValueError):
    """A rational amplitude was evaluated where its denominator vanishes mod p."""


class NotAdmissible(QuadcongError, ValueError):
    """The form fails gcd(a(4ac-b^2)Delta, p) = 1, or p is not an odd prime."""


class NoSolutionModP(QuadcongError):
    pass


class CardinalityMismatch(QuadcongError, AssertionError):
    """Enumeration disagreed with the closed-form count (an internal bug)."""


class FormulaMismatch(QuadcongError, AssertionError):
    pass


class IdentityMismatch(QuadcongError, AssertionError):
    pass


class BudgetExceeded(QuadcongError, RuntimeError):
    """A brute-force loop would exceed its configured work budget."""


class ParseError(QuadcongError, ValueError):
    pass
