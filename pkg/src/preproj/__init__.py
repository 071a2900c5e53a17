"""Exact structure theory of preprojective algebras of valued quivers."""

from .cartan import (
    CartanDatum,
    Classification,
    ValuedQuiver,
    build_cartan,
    classify,
    from_cartan_matrix,
    standard_quiver,
)
from .hilbert import GradedDimTable, graded_dim_table, vieta_matrix
from .inputs import Problem, load_problem
from .pathalg import Quiver, double_quiver, koszul_dual_table, oracle_table
from .weyl import coxeter_element, enumerate_roots, nakayama_permutation

__all__ = [
    "CartanDatum",
    "Classification",
    "GradedDimTable",
    "Problem",
    "Quiver",
    "ValuedQuiver",
    "build_cartan",
    "classify",
    "coxeter_element",
    "double_quiver",
    "enumerate_roots",
    "from_cartan_matrix",
    "graded_dim_table",
    "koszul_dual_table",
    "load_problem",
    "nakayama_permutation",
    "oracle_table",
    "standard_quiver",
    "vieta_matrix",
]

__version__ = "0.1.0"
