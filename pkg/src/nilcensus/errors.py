"""Exception hierarchy for nilcensus."""


class NilcensusError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(NilcensusError, ValueError):
    pass


class AlgebraError(NilcensusError, ValueError):
    """A structure-constant table fails one of the algebra axioms.

    ``indices`` holds the offending basis index pair or triple.
    """

    def __init__(self, message, indices=()):
        super().__init__(message)
        self.indices = tuple(indices)


class NotCommutative(AlgebraError):
    pass


class NotAssociative(AlgebraError):
    pass


class NotNilpotent(AlgebraError):
    pass


class BadCoordinates(AlgebraError):
    pass


class ZeroAlgebra(NilcensusError, ValueError):
    pass


class NotAnIdeal(NilcensusError, ValueError):
    pass


class EnumerationTooLarge(NilcensusError):
    """Raised instead of starting a brute-force scan above the configured cap."""


class HypothesisViolated(NilcensusError):
    """A bound was requested for an algebra outside its range of validity."""


class NonIntegerCoefficients(NilcensusError):
    pass


class ValidationMismatch(NilcensusError):
    pass
