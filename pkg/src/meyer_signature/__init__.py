"""Exact computations around the Meyer function of plane curve families."""

try:
    from ._version import __version__
except ImportError:  # pragma: no cover
    __version__ = "0.0.0"

from .errors import MeyerSignatureError
from .exact_linalg import GaussianRational, RationalMatrix, SignatureTriple, symmetric_signature
from .symplectic_meyer import EPSILON, SymplecticMatrix, meyer_cocycle, transvection

__all__ = [
    "EPSILON",
    "GaussianRational",
    "MeyerSignatureError",
    "RationalMatrix",
    "SignatureTriple",
    "SymplecticMatrix",
    "__version__",
    "meyer_cocycle",
    "symmetric_signature",
    "transvection",
]
