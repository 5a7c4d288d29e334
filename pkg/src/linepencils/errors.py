"""Exception hierarchy.  Everything derives from ``PencilError``."""


class PencilError(Exception):
    pass


class ValidationError(PencilError, ValueError):
    """Raw data does not describe a line combinatorics."""


class DuplicatePair(ValidationError):
    pass


class BadIndex(ValidationError):
    pass


class PointTooSmall(ValidationError):
    pass


class ParseError(ValidationError):
    """Malformed text input; carries the offending line number when known."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class UnsupportedField(PencilError, ValueError):
    pass


class RowSumNonZero(PencilError, ValueError):
    pass


class NotAdmissible(PencilError, ValueError):
    pass


class EmptyChi(PencilError, ValueError):
    pass


class NotIndecomposable(PencilError, ValueError):
    pass


class BadSignPattern(PencilError, ValueError):
    pass


class SearchBoundExceeded(PencilError, RuntimeError):
    pass


class NotUnimodular(PencilError, ValueError):
    pass


class ClassNotPreserved(PencilError, AssertionError):
    """An automorphism sent a class outside the class list (an internal bug)."""


class DualityViolation(PencilError, AssertionError):
    pass


class ManifestMismatch(PencilError, AssertionError):
    pass
