"""Noncommutative polynomial calculus: Hessians, middle matrices, signatures."""
from .classify import Verdict, classify_one_negative, synthesize
from .errors import InternalConsistencyError
from .freealg import Letter, LetterKind, MatrixTuple, NcPoly, evaluate
from .inertia import exact_inertia, min_signature_hessian, sds_from_hessian
from .midmat import build_middle_matrix
from .ncderiv import directional_derivative, hessian, kth_derivative
from .ncparse import ParseError, parse, to_string

__all__ = [
    "InternalConsistencyError",
    "Letter",
    "LetterKind",
    "MatrixTuple",
    "NcPoly",
    "ParseError",
    "Verdict",
    "build_middle_matrix",
    "classify_one_negative",
    "directional_derivative",
    "evaluate",
    "exact_inertia",
    "hessian",
    "kth_derivative",
    "min_signature_hessian",
    "parse",
    "sds_from_hessian",
    "synthesize",
    "to_string",
]
__version__ = "0.1.0"
