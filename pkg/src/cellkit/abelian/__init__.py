"""Exact integer linear algebra and finitely generated abelian groups."""

from .fgab import (
    AbHom,
    FgAbGroup,
    LemmaVerdict,
    check_p_prime_torsion_lemma,
    cokernel,
    exterior_square,
    is_isomorphic,
    parse_abelian,
    quotient_by_torsion,
    rank,
    tensor_product,
    torsion_part,
)
from .intmatrix import IntMatrix, parse_matrix
from .smith import SmithForm, canonical_factors, matrix_rank, smith_diagonal, smith_normal_form, xgcd

__all__ = [
    "AbHom",
    "FgAbGroup",
    "IntMatrix",
    "LemmaVerdict",
    "SmithForm",
    "canonical_factors",
    "check_p_prime_torsion_lemma",
    "cokernel",
    "exterior_square",
    "is_isomorphic",
    "matrix_rank",
    "parse_abelian",
    "parse_matrix",
    "quotient_by_torsion",
    "rank",
    "smith_diagonal",
    "smith_normal_form",
    "tensor_product",
    "torsion_part",
    "xgcd",
]
