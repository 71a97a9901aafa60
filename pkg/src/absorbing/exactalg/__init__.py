"""Exact rational and polynomial arithmetic."""
from .linalg import adjugate, det_exact, det_poly
from .poly import LAM, Z, BiPoly, UniPoly, as_fraction, lambda_normalize, poly_gcd, squarefree_part
from .roots import (
    AlgebraicNumber,
    count_roots,
    isolate_real_roots,
    minimal_poly_candidate,
    rational_roots,
    refine_root,
    sturm_sequence,
    to_decimal,
)

__all__ = [
    "AlgebraicNumber", "BiPoly", "LAM", "UniPoly", "Z", "adjugate", "as_fraction",
    "count_roots", "det_exact", "det_poly", "isolate_real_roots", "lambda_normalize",
    "minimal_poly_candidate", "poly_gcd", "rational_roots", "refine_root",
    "squarefree_part", "sturm_sequence", "to_decimal",
]
