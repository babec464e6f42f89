"""Exact sparse polynomial arithmetic over Q."""

from .algorithms import (SingularMatrixError, content, det, gcd, prem, resultant,
                         solve_rational, squarefree_factorization, squarefree_part,
                         sylvester)
from .orders import GREVLEX, LEX, MonomialOrder
from .parse import ParseError, format_poly, parse_poly
from .poly import NotDivisibleError, Poly, ZeroPolynomialError, to_q
from .registry import RegistryError, VarRegistry
from . import univariate

__all__ = [
    "GREVLEX", "LEX", "MonomialOrder", "NotDivisibleError", "ParseError", "Poly",
    "RegistryError", "SingularMatrixError", "VarRegistry", "ZeroPolynomialError",
    "content", "det", "format_poly", "gcd", "parse_poly", "prem", "resultant",
    "solve_rational", "squarefree_factorization", "squarefree_part", "sylvester",
    "to_q", "univariate",
]
