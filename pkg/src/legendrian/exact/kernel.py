"""Kernel dispatcher choosing between the Bareiss and modular paths."""

from __future__ import annotations

from ..errors import ComputationError
from .linalg import LinSubspace, as_sparse, kernel_bareiss
from .modular import kernel_modular

# above this many unknowns the modular path is the default
BAREISS_MAX_COLS = 150


def kernel_basis(m, method="auto", stats=None) -> LinSubspace:
    """Exact null space of ``m`` (dense rows or :class:`SparseMatrix`) in canonical form.

    ``method`` is ``"bareiss"``, ``"modular"``, ``"auto"`` or ``"both"``;
    ``"both"`` runs the two paths and raises if they disagree.
    """
    sm = as_sparse(m)
    if method == "auto":
        method = "bareiss" if sm.ncols <= BAREISS_MAX_COLS else "modular"
    if stats is not None:
        stats["method"] = method
    if method == "bareiss":
        return kernel_bareiss(sm)
    if method == "modular":
        return kernel_modular(sm, stats=stats)
    if method == "both":
        a = kernel_bareiss(sm)
        b = kernel_modular(sm, stats=stats)
        if a != b:
            raise ComputationError("Bareiss and modular kernels disagree")
        return a
    raise ValueError(f"unknown kernel method {method!r}")
