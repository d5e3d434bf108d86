"""kurepa: left factorials, Bell/Wilson/Gertsch quotients, Bernoulli and
Gregory residue tables, congruence checks, and prime-search campaigns."""

from .errors import (
    CapacityError,
    CheckpointError,
    DomainError,
    EmptyRangeError,
    InvariantViolation,
    KurepaError,
    NotInvertibleError,
)
from .modmath import (
    UNDEFINED,
    PrimeRange,
    Residue,
    is_prime,
    iter_primes,
    mod_inv,
    mod_pow,
    rational_residue,
    sieve_primes,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError", "CheckpointError", "DomainError", "EmptyRangeError",
    "InvariantViolation", "KurepaError", "NotInvertibleError",
    "UNDEFINED", "PrimeRange", "Residue", "is_prime", "iter_primes",
    "mod_inv", "mod_pow", "rational_residue", "sieve_primes",
    "__version__",
]
