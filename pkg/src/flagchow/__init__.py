"""
Exact arithmetic intersection theory on flag varieties over the integers.

The package computes Schubert polynomials, invariant forms on the flag
manifold, Bott-Chern forms of the tautological filtrations, and products and
degrees in the invariant arithmetic Chow ring.

>>> from flagchow import FlagType, monomial_class, arithmetic_degree
>>> arithmetic_degree(monomial_class((0, 4, 0), FlagType.complete(3)))
Fraction(1, 2)
"""

from .bcform import FiltrationSpec, bc_chern, bc_symmetric, bc_total_chern
from .chow import (
    ArithmeticClass,
    arithmetic_degree,
    arithmetic_monk,
    degree_table,
    height_pluriplucker,
    monomial_class,
    multiply,
    polynomial_class,
    tilde_schubert,
)
from .forms import InvariantForm, calibration, ddc, integral_top, substitute_flag
from .perm import FlagType, Permutation
from .poly import EngineFault, SparsePolynomial, schubert, schubert_expand

__all__ = [
    "ArithmeticClass",
    "EngineFault",
    "FiltrationSpec",
    "FlagType",
    "InvariantForm",
    "Permutation",
    "SparsePolynomial",
    "arithmetic_degree",
    "arithmetic_monk",
    "bc_chern",
    "bc_symmetric",
    "bc_total_chern",
    "calibration",
    "ddc",
    "degree_table",
    "height_pluriplucker",
    "integral_top",
    "monomial_class",
    "multiply",
    "polynomial_class",
    "schubert",
    "schubert_expand",
    "substitute_flag",
    "tilde_schubert",
]
