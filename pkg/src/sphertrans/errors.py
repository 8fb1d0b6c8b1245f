"""Exception types shared across the package."""


class SphertransError(Exception):
    """Base class for all library errors."""


class NonSquareError(SphertransError):
    """Operation requires a square matrix."""


class NonHermitianError(SphertransError):
    """Matrix deviates from Hermitian beyond the allowed threshold."""


class NotPSDError(SphertransError):
    """Matrix has an eigenvalue below the negativity clip threshold."""


class NumericalFailureError(SphertransError):
    """A LAPACK routine failed to converge."""


class InvalidPError(SphertransError):
    """Schatten exponent must satisfy p >= 1."""


class InvalidParameterError(SphertransError):
    """Interpolation parameter outside its admissible interval."""


class DimensionMismatchError(SphertransError):
    """Operands act on different spaces."""


class NotCommutingError(SphertransError):
    """Predicate route is only defined for commuting tuples."""
