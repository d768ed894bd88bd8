"""
Exceptions raised by meyer_signature.

Validation errors also derive from the matching built-in exception,
so callers that only know about ``ValueError`` keep working.
"""


class MeyerSignatureError(Exception):
    """Base class of all errors raised by this package."""


class NotSymmetric(MeyerSignatureError, ValueError):
    pass


class Singular(MeyerSignatureError, ValueError):
    pass


class SingularMatrix(Singular):
    """A GL(3) action was requested with a non-invertible matrix."""


class DimensionMismatch(MeyerSignatureError, ValueError):
    pass


class NotSymplectic(MeyerSignatureError, ValueError):
    pass


class ZeroVector(MeyerSignatureError, ValueError):
    pass


class GenusMismatch(MeyerSignatureError, ValueError):
    pass


class FormNotSymmetric(MeyerSignatureError, AssertionError):
    """
    The pairing restricted to V_{A,B} came out non-symmetric.

    This is never a user error: the restricted Meyer form is symmetric by construction.
    """


class MissingValue(MeyerSignatureError, KeyError):
    pass


class DegreeTooSmall(MeyerSignatureError, ValueError):
    pass


class LassoUndefined(MeyerSignatureError, ValueError):
    pass


class ZeroBidegree(MeyerSignatureError, ValueError):
    pass


class NotASingularPoint(MeyerSignatureError, ValueError):
    pass


class WrongDegree(MeyerSignatureError, ValueError):
    pass


class NegativeCount(MeyerSignatureError, ValueError):
    pass


class ParseError(MeyerSignatureError, ValueError):
    pass
