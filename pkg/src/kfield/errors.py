"""Exception hierarchy shared by all kfield modules."""


class KFieldError(ValueError):
    """Base class for user-facing errors (bad input, violated preconditions)."""


class NotPrime(KFieldError):
    pass


class SizeGuardExceeded(KFieldError):
    pass


class ZeroElement(KFieldError):
    pass


class ZeroArgument(KFieldError):
    pass


class FieldMismatch(KFieldError):
    pass


class PrimenessViolated(KFieldError):
    """Raised when gcd(f, q - 1) != 1 but an operation needs it."""


class ZeroPolynomial(KFieldError):
    pass


class ConstantFunction(KFieldError):
    pass


class RingMismatch(KFieldError):
    pass


class NotStationary(KFieldError):
    pass


class CoefficientOutOfField(KFieldError):
    pass


class ExprSyntaxError(KFieldError):
    """Parse failure; ``position`` is the 0-based offset into the input."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class CrossCheckMismatch(RuntimeError):
    """Two independent computation paths disagree. Always an internal bug."""
