"""Exception types shared across the package."""


class GicError(Exception):
    """Base class for all package-specific errors."""


class NonWeakRegime(GicError):
    """Cross gain a or b is >= 1; only the weak regime is supported."""


class NonPositive(GicError):
    """A power budget or noise variance is not strictly positive."""


class DimensionMismatch(GicError):
    """Rate vector length does not match the polymatroid ground set."""


class TooLarge(GicError):
    """Ground set exceeds the exhaustive-check cap."""


class OverlappingSets(GicError):
    """Decoded and as-noise subsets intersect."""


class SliceMismatch(GicError):
    """Sliced 4-input MAC constraints disagree with the HK polytope."""


class NotOnFacet(GicError):
    """Solution does not lie on the dominant sum-rate facet."""


class BadDelta(GicError):
    """Layer power delta is non-positive or larger than a nonzero band."""


class VerificationFailed(GicError):
    """Nested-optimality residual exceeds the allowed tolerance."""


class MissingPower(GicError):
    """Upper entropy bound requested without a power value."""


class ConfigError(GicError):
    """Invalid or missing scenario configuration."""
