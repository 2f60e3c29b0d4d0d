"""Exception hierarchy shared by the library modules and the CLI.

Library code raises these; only cli.py turns them into exit codes.
"""


class PolytopeError(ValueError):
    """Base class for every domain error raised by toric_dh."""


class ZeroVector(PolytopeError):
    pass


class DimensionMismatch(PolytopeError):
    pass


class SingularMatrix(PolytopeError):
    pass


class NotFullDimensional(PolytopeError):
    pass


class Unbounded(PolytopeError):
    pass


class Empty(PolytopeError):
    pass


class IndexOutOfRange(PolytopeError, IndexError):
    pass


class NotAVertex(PolytopeError):
    pass


class NotIntegral(PolytopeError):
    pass


class NotDelzant(PolytopeError):
    pass


class NotAVertexOfFacet(PolytopeError):
    pass


class AssertionViolation(PolytopeError):
    """A conclusion that holds for every reflexive Delzant input failed."""


class UnsupportedDimension(PolytopeError):
    pass


class NotReflexiveDelzant(PolytopeError):
    pass


class OutOfDomain(PolytopeError):
    pass


class InvalidFace(PolytopeError):
    pass


class EpsilonTooLarge(PolytopeError):
    pass


class NotAdmissible(PolytopeError):
    pass


class VerificationFailed(PolytopeError):
    pass


class DocumentError(PolytopeError):
    """Malformed input document; *field* names the offending location."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")
