"""Exception types shared across the package."""


class GaudualError(Exception):
    pass


class ZeroInverse(GaudualError):
    """Inversion of the zero rational function."""


class NotInvertible(GaudualError):
    """Element has no inverse in the supported factored form."""


class UnlistedPole(GaudualError):
    """Denominator root not covered by the supplied pole list."""


class ResidualPole(GaudualError):
    """A denominator survived where a polynomial was required."""

    def __init__(self, point, order):
        super().__init__(f"residual pole of order {order} at {point}")
        self.point = point
        self.order = order


class NonSquare(GaudualError):
    pass


class NoncommutativeRing(GaudualError):
    """Ordinary determinant requested over a noncommutative ring."""


class BlockNotInvertible(GaudualError):
    pass


class SingularBlock(GaudualError):
    pass


class IndexOutOfRange(GaudualError):
    pass


class DivisorMismatch(GaudualError):
    """Divisor degree constraints (sum of weights) violated."""


class BadPoints(GaudualError):
    """Point configuration violates distinctness constraints."""


class RequiresRegularDivisor(GaudualError):
    pass


class DuplicateFrequency(GaudualError):
    pass


class InhomogeneousInput(GaudualError):
    """Graded bracket called on an element of mixed parity."""


class GuardExceeded(GaudualError):
    """A term-count or size ceiling was exceeded."""


class SpecValidationError(GaudualError):
    """Instance specification failed validation before dispatch."""
