"""Exception hierarchy shared by all kurepa modules."""


class KurepaError(Exception):
    """Base class for all library errors."""


class DomainError(KurepaError, ValueError):
    """An argument is outside the mathematical domain of the operation."""


class EmptyRangeError(DomainError):
    """A prime range was given with hi < lo."""


class NotInvertibleError(DomainError):
    """Modular inverse requested for a non-unit; carries the offending gcd."""

    def __init__(self, a: int, modulus: int, gcd: int):
        super().__init__(f"{a} is not invertible mod {modulus} (gcd={gcd})")
        self.a = a
        self.modulus = modulus
        self.gcd = gcd


class CapacityError(KurepaError):
    """Requested index/range exceeds a configured kernel cap."""


class InvariantViolation(KurepaError, RuntimeError):
    """An internal divisibility/congruence invariant failed.

    Raised when a division-by-p step finds a non-divisible numerator or a
    Wilson check fails: it signals either a composite input that slipped past
    a precondition or a kernel bug, never a legitimate result.
    """


class CheckpointError(KurepaError):
    """A search checkpoint is corrupt or inconsistent with the campaign."""
