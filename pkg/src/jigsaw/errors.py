"""Exception types shared across the package."""


class JigsawError(Exception):
    """Base class for all package-specific errors."""


class SingularMatrix(JigsawError):
    """Raised when a projective matrix would have determinant zero."""


class NegativeDeterminant(JigsawError):
    """Raised for orientation-reversing (det < 0) matrices, which are unsupported."""


class IdentityMatrix(JigsawError):
    """Raised when an operation requires a non-identity matrix."""


class NonPositiveHeight(JigsawError):
    """Raised when a rotation center would not lie in the upper half-plane."""


class NotATranslation(JigsawError):
    """Raised when the ordered generator product is not a horizontal translation."""


class EmptyJigsaw(JigsawError):
    """Raised when a fan jigsaw is requested with no tiles."""


class UnsupportedTileType(JigsawError):
    """Raised when an operation only defined for tile types 1 and 4 sees another type."""


class BudgetExceeded(JigsawError):
    """Raised when a combinatorial expansion exceeds its step budget."""


class EmptyFingerprint(JigsawError):
    """Raised when a tangency period is requested but no tangency points exist."""


class FixesInfinity(JigsawError):
    """Raised when a killer interval is requested for an element fixing infinity."""


class NoCoveringInterval(JigsawError):
    """Raised when denominator descent finds no killer interval around a value."""


class UnsupportedResidue(JigsawError):
    """Raised when an explicit certificate family does not cover the requested index."""


class InconsistentGroup(JigsawError):
    """Raised when a search produces evidence that cannot coexist in a discrete group."""
