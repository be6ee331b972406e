"""Polynomial special functions used by the eigenfunctions.

All functions accept scalar or array ``x`` and return the matching shape.
Only terminating hypergeometric series are provided.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "ParameterPoleError",
    "laguerre_gen",
    "kummer_poly",
    "gauss2f1_poly",
    "log_gamma_fn",
    "binom_real",
]


class ParameterPoleError(ValueError):
    """A Pochhammer denominator hits zero before the series terminates."""


def _out(values, x):
    return float(values) if np.ndim(x) == 0 else values


def laguerre_gen(N: int, alpha_idx: float, x):
    """Generalised Laguerre polynomial :math:`L_N^{(\\alpha)}(x)`.

    Uses the forward three-term recurrence
    ``(k+1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}``,
    which stays stable where the explicit sum cancels badly.

    Parameters
    ----------
    N : int
        Degree, ``N >= 0``.
    alpha_idx : float
        Generalisation index, ``alpha_idx > -1``.
    x : float or array_like
        Evaluation points.
    """
    if N < 0:
        raise ValueError(f"degree must be >= 0 (got {N})")
    if not alpha_idx > -1:
        raise ValueError(f"alpha_idx must be > -1 (got {alpha_idx})")
    xa = np.asarray(x, dtype=float)
    prev = np.ones_like(xa)
    if N == 0:
        return _out(prev, x)
    cur = 1.0 + alpha_idx - xa
    for k in range(1, N):
        prev, cur = cur, ((2 * k + 1 + alpha_idx - xa) * cur - (k + alpha_idx) * prev) / (k + 1)
    return _out(cur, x)


def _check_pole(c: float, n: int, name: str):
    for j in range(n):
        if c + j == 0:
            raise ParameterPoleError(f"{name}={c} makes ({name})_{j + 1} vanish before termination")


def kummer_poly(N: int, b: float, x):
    """Terminating Kummer series ``1F1(-N; b; x)``."""
    if N < 0:
        raise ValueError(f"N must be >= 0 (got {N})")
    _check_pole(b, N, "b")
    xa = np.asarray(x, dtype=float)
    term = np.ones_like(xa)
    total = term.copy()
    for j in range(N):
        term = term * ((-N + j) / ((b + j) * (j + 1))) * xa
        total = total + term
    return _out(total, x)


def gauss2f1_poly(n: int, B: float, c: float, y):
    """Terminating Gauss series ``2F1(-n, B; c; y)``."""
    if n < 0:
        raise ValueError(f"n must be >= 0 (got {n})")
    _check_pole(c, n, "c")
    ya = np.asarray(y, dtype=float)
    term = np.ones_like(ya)
    total = term.copy()
    for j in range(n):
        term = term * ((-n + j) * (B + j) / ((c + j) * (j + 1))) * ya
        total = total + term
    return _out(total, y)


def log_gamma_fn(z: float) -> float:
    """``ln Gamma(z)`` for ``z > 0``."""
    if not z > 0:
        raise ValueError(f"log_gamma_fn needs z > 0 (got {z})")
    return math.lgamma(z)


def binom_real(top: float, k: int) -> float:
    """Binomial coefficient ``C(top, k)`` for real ``top > k - 1``."""
    return math.exp(math.lgamma(top + 1) - math.lgamma(k + 1) - math.lgamma(top - k + 1))
