"""Exception types shared across the toolkit."""


class HokError(Exception):
    """Base class for all toolkit errors."""


class NonSquare(HokError):
    """Determinant requested for a non-square matrix."""


class DimensionMismatch(HokError):
    """Vectors or matrix blocks of incompatible shapes."""


class InvalidRank(HokError):
    """Rank out of range for the requested Cartan family."""


class InvalidIsogeny(HokError):
    """Isogeny label not admitted by the type."""


class ResourceLimit(HokError):
    """Request exceeds a hard-coded enumeration guard."""


class InvalidParams(HokError):
    """Parameter tuple violates the constraints of the rank lemma."""


class SeriesMismatch(HokError):
    """Symbol series does not support the requested construction."""


class NotAMember(HokError):
    """Symbol does not belong to the given family."""


class GroupMismatch(HokError):
    """Operands live on different group models."""


class TwistDoesNotStabilize(HokError):
    """Automorphism does not stabilize the requested parabolic data."""


class DecompositionFailure(HokError):
    """Internal inconsistency in the cuspidal decomposition (must not occur)."""


class MissingRegularElement(HokError):
    """A torus class has no regular element at this q."""
