"""Exception types shared across the package."""


class NlgeoError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(NlgeoError):
    """Operands have incompatible dimensions."""


class NotHermitian(NlgeoError):
    """Matrix is not Hermitian within tolerance."""


class NotPSD(NlgeoError):
    """Matrix has an eigenvalue below the accepted negativity floor."""


class InvalidProbability(NlgeoError):
    """Probability vector has negative entries or does not sum to one."""


class OutOfRange(NlgeoError):
    """Parameter lies outside its admissible range."""


class NonPhysical(NlgeoError):
    """Input does not correspond to a physical state."""


class NotConverged(NlgeoError):
    """Optimizer failed to converge within its iteration budget."""
