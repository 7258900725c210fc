"""Exact-arithmetic toolkit for jigsaw Fuchsian groups.

Builds fan jigsaws out of decorated ideal triangles, certifies cusp sets via
killer-interval coverings, hunts hyperbolic elements with rational fixed
points, and emits machine-checkable certificates for all of it.
"""

from .errors import (
    BudgetExceeded,
    EmptyFingerprint,
    EmptyJigsaw,
    FixesInfinity,
    IdentityMatrix,
    InconsistentGroup,
    JigsawError,
    NegativeDeterminant,
    NoCoveringInterval,
    NonPositiveHeight,
    NotATranslation,
    SingularMatrix,
    UnsupportedResidue,
    UnsupportedTileType,
)
from .exact import (
    IDENTITY,
    INF,
    ExtendedRational,
    FixedPointResult,
    Infinity,
    IsometryClass,
    ProjectiveMatrix,
    classify,
    compose,
    denominator_height,
    fixed_points,
    inverse,
    is_infinite,
    mobius_apply,
    normalize,
    rotation_about,
)

__all__ = [name for name in dir() if not name.startswith("_")]
