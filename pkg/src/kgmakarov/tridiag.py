"""Lowest eigenvalues of a symmetric tridiagonal matrix.

The compiled Sturm-bisection kernel (``kgmakarov._sturm``) is used when it
was built; otherwise the LAPACK bisection driver behind
:func:`scipy.linalg.eigh_tridiagonal` takes over. Both return the same
eigenvalues to rounding.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import eigh_tridiagonal

try:
    from ._sturm import lowest_eigenvalues as _compiled_lowest
except ImportError:  # extension not built
    _compiled_lowest = None

__all__ = ["BACKEND", "available_backends", "set_backend", "lowest_eigenvalues"]

BACKEND = "compiled" if _compiled_lowest is not None else "python"


def available_backends() -> list[str]:
    return ["compiled", "python"] if _compiled_lowest is not None else ["python"]


def set_backend(name: str) -> str:
    """Switch the kernel; returns the previous backend name."""
    global BACKEND
    if name not in available_backends():
        raise ValueError(f"backend {name!r} unavailable (have {available_backends()})")
    prev, BACKEND = BACKEND, name
    return prev


def _python_lowest(diag: np.ndarray, off: np.ndarray, count: int) -> np.ndarray:
    if count == 0:
        return np.empty(0)
    if len(diag) == 1:
        return diag.copy()
    return eigh_tridiagonal(diag, off, eigvals_only=True, select="i",
                            select_range=(0, count - 1), lapack_driver="stebz",
                            tol=np.finfo(float).tiny)


def lowest_eigenvalues(diag, off, count: int, backend: str | None = None) -> np.ndarray:
    """``count`` smallest eigenvalues of the tridiagonal matrix, ascending."""
    diag = np.ascontiguousarray(diag, dtype=float)
    off = np.ascontiguousarray(off, dtype=float)
    if len(off) != len(diag) - 1:
        raise ValueError("off-diagonal must have length len(diag) - 1")
    if not 0 <= count <= len(diag):
        raise ValueError(f"count={count} out of range for a {len(diag)}x{len(diag)} matrix")
    backend = backend or BACKEND
    if backend == "compiled":
        if _compiled_lowest is None:
            raise ValueError("compiled backend unavailable")
        return np.asarray(_compiled_lowest(diag, off, count), dtype=float)
    return np.asarray(_python_lowest(diag, off, count), dtype=float)
