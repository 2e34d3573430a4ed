"""Exception hierarchy for the library.

Every error carries a stable machine-readable ``code`` attribute so that the
command-line tool and the tests can match on it without parsing prose.
"""


class TropjacError(Exception):
    """Base class for all errors raised by this package."""

    code = "ERROR"

    def __init__(self, message=None):
        super().__init__(message if message is not None else self.code)


class CompatibilityViolation(TropjacError):
    """The two matrices of a morphism do not satisfy the pairing law."""

    code = "COMPATIBILITY_VIOLATION"


class ContainmentViolation(TropjacError):
    """A lattice is not contained in the lattice it was tested against."""

    code = "CONTAINMENT_VIOLATION"


class NotInjective(TropjacError):
    code = "NOT_INJECTIVE"


class NotSurjective(TropjacError):
    code = "NOT_SURJECTIVE"


class NotFinite(TropjacError):
    code = "NOT_FINITE"


class NotIsogeny(TropjacError):
    code = "NOT_ISOGENY"


class NotExact(TropjacError):
    code = "NOT_EXACT"


class NotTorsion(TropjacError):
    code = "NOT_TORSION"


class ShapeMismatch(TropjacError):
    code = "SHAPE_MISMATCH"


class SourceMismatch(TropjacError):
    code = "SOURCE_MISMATCH"


class InvalidCover(TropjacError):
    code = "INVALID_COVER"


class NotOptimal(TropjacError):
    code = "NOT_OPTIMAL"


class NotProductTarget(TropjacError):
    code = "NOT_PRODUCT_TARGET"


class OffsetOutOfRange(TropjacError):
    code = "OFFSET_OUT_OF_RANGE"


class ParseError(TropjacError):
    code = "PARSE_ERROR"


class ValidationError(TropjacError):
    code = "VALIDATION_ERROR"
