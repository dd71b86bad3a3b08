"""Exact rewriting engine and identity checks for the h-deformed Gr(1|1)."""

from .algebra import (
    Alphabet, Element, Generator, RewriteSystem, Rule, check_local_confluence, format_element,
    multiply, normal_form, substitute, termination_audit,
)
from .errors import (
    AlphabetMismatch, DimensionMismatch, DivisionByZero, ExtractionFailure, InvalidRule,
    MissingImage, NonInvertibleDerivation, ParseError, PoleAtOne, StepLimitExceeded,
    UnknownGenerator,
)
from .parsing import parse, parse_scalar
from .presets import PRESET_NAMES, build, extend_with_inverses
from .scalar import Q, Scalar, limit_at_one, scalar_arith
from .supermatrix import (
    MATRIX_NAMES, SuperMatrix, build_matrix, embed_R, embed_T1, embed_T2, mat_mul,
)

__all__ = [
    "Alphabet", "Element", "Generator", "RewriteSystem", "Rule", "check_local_confluence",
    "format_element", "multiply", "normal_form", "substitute", "termination_audit",
    "AlphabetMismatch", "DimensionMismatch", "DivisionByZero", "ExtractionFailure",
    "InvalidRule", "MissingImage", "NonInvertibleDerivation", "ParseError", "PoleAtOne",
    "StepLimitExceeded", "UnknownGenerator", "parse", "parse_scalar", "PRESET_NAMES", "build",
    "extend_with_inverses", "Q", "Scalar", "limit_at_one", "scalar_arith", "MATRIX_NAMES",
    "SuperMatrix", "build_matrix", "embed_R", "embed_T1", "embed_T2", "mat_mul",
]
