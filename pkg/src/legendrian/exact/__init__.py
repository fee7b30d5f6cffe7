"""Exact arithmetic: rationals (``fractions.Fraction``), polynomials, kernels."""

from fractions import Fraction as Rat

from .kernel import kernel_basis
from .linalg import LinSubspace, SparseMatrix, bareiss_det, rank, rref, solve
from .modular import BACKEND
from .poly import MPoly, poly_diff, poly_eval

__all__ = [
    "BACKEND",
    "LinSubspace",
    "MPoly",
    "Rat",
    "SparseMatrix",
    "bareiss_det",
    "kernel_basis",
    "poly_diff",
    "poly_eval",
    "rank",
    "rref",
    "solve",
]
