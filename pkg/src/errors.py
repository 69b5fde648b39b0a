"""
Exception hierarchy for permanental ideal computations.
Validation errors subclass ValueError so callers can catch them generically.
"""

from typing import Optional, Sequence, Tuple


class PermanentalError(Exception):
    """Base class for all errors raised by this package."""


class InvalidShapeError(PermanentalError, ValueError):
    """Radices or slice parameter are out of range."""


class InvalidPointError(PermanentalError, ValueError):
    """A point does not belong to the hypermatrix index set."""


class InvalidAxisError(PermanentalError, ValueError):
    """An axis index lies outside [n]."""


class InvalidArgumentsError(PermanentalError, ValueError):
    """Arguments are individually valid but inconsistent with each other."""


class ParseError(PermanentalError, ValueError):
    """Text input could not be parsed."""


class NotConnectedError(PermanentalError, ValueError):
    """Two points are not joined by a distance-1 chain inside the set."""


class NotSignedError(PermanentalError, ValueError):
    """A construction requires a t-signed set."""

    def __init__(self, message: str, witness: Optional[Sequence[Tuple[int, ...]]] = None):
        super().__init__(message)
        self.witness = tuple(witness) if witness is not None else None


class CapExceededError(PermanentalError, RuntimeError):
    """Exhaustive enumeration was refused because the shape is too large."""

    def __init__(self, size: int, cap: int):
        super().__init__(
            f"Point count {size} exceeds the enumeration cap {cap}. "
            f"Raise --cap-points or PERMIDEAL_CAP_POINTS to continue."
        )
        self.size = size
        self.cap = cap


class InconsistentSignError(PermanentalError, RuntimeError):
    """Two admissible switch sets produced the same monomials with opposite signs."""
