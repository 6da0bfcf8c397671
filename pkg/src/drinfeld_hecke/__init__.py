"""Hecke operators on harmonic cocycles for Gamma_1(T) and Gamma(T).

Exact computation of Hecke operator matrices on spaces of harmonic
cocycles on the Bruhat-Tits tree of PGL_2(F_q((1/T))), their
eigenstructure, and an independent brute-force tree oracle for
cross-validation.  All arithmetic is exact over F_q(T).
"""

from .errors import (ComputationError, DivisionByZero, GroupMismatch,
                     InternalError, InvalidInput, InvariantViolation,
                     NotFoundWithinDepth, PrecisionError, ShapeError,
                     WrongDegree)
from .fields import FiniteField, binom_mod_p, field_from_string, get_field
from .poly import Poly, RatFunc, parse_poly, parse_ratfunc
from .linalg import Mat, UPoly, upoly_separable

__all__ = [
    "ComputationError", "DivisionByZero", "GroupMismatch", "InternalError",
    "InvalidInput", "InvariantViolation", "NotFoundWithinDepth",
    "PrecisionError", "ShapeError", "WrongDegree",
    "FiniteField", "binom_mod_p", "field_from_string", "get_field",
    "Poly", "RatFunc", "parse_poly", "parse_ratfunc",
    "Mat", "UPoly", "upoly_separable",
]
