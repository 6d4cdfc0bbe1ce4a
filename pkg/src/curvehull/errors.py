"""Exception types shared across the library."""


class CurveHullError(Exception):
    """Base class for all library errors."""


class NotDivisible(CurveHullError):
    """Exact division was requested but the quotient has a remainder."""


class NonSquare(CurveHullError):
    """Determinant of a non-square matrix."""


class DegreeZero(CurveHullError):
    """Resultant with respect to a variable the input does not contain."""


class ResourceLimit(CurveHullError):
    """A Groebner computation exceeded its pair budget."""


class NotZeroDimensional(CurveHullError):
    """Quotient-algebra construction on an ideal with infinitely many zeros."""


class DegreeCapExceeded(CurveHullError):
    """Factorization input above the configured degree cap."""


class NotHomogeneous(CurveHullError):
    """Operation requires a homogeneous polynomial."""


class DegenerateSpec(CurveHullError):
    """Trigonometric spec collapses to a point or a constant curve."""


class NotSymmetric(CurveHullError):
    """Symmetrization input is not invariant under swapping the point pair."""


class NotInInvariantRing(CurveHullError):
    """Symmetrization input is not a polynomial in the pair invariants."""


class ZeroDeterminant(CurveHullError):
    """Stationary determinant vanishes identically (degenerate curve)."""


class NonPrincipal(CurveHullError):
    """Elimination ideal expected to be principal has several generators."""

    def __init__(self, message, generators=None):
        super().__init__(message)
        self.generators = generators or []


class DegeneratePencil(CurveHullError):
    """Pencil of quadrics whose determinant has degree below four."""


class DegreeMismatch(CurveHullError):
    """Curve degree incompatible with the requested squares ideal."""


class ChartFailure(CurveHullError):
    """No affine chart free of solutions was found for the Chow form."""


class InvalidProfile(CurveHullError):
    """Invalid invariant profile for an enumerative formula."""


class ParseError(CurveHullError):
    """Malformed polynomial text or curve spec file."""
