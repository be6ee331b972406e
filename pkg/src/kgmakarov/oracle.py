"""Independent numerical checks: finite-difference eigensolvers and quadrature.

Nothing here touches the iteration method, the special-function module or
the closed-form spectrum; the only shared piece is the tridiagonal
eigenvalue kernel.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import tridiag

__all__ = [
    "OracleError",
    "QuadratureError",
    "BoxTooSmallError",
    "SlowConvergenceWarning",
    "Grid1D",
    "EigenResult",
    "quadrature",
    "radial_grid",
    "angular_grid",
    "radial_fd_eigen",
    "angular_fd_eigen",
    "self_consistent_oracle",
    "convergence_ratio",
    "radial_box",
    "associated_legendre",
]


class OracleError(ValueError):
    pass


class QuadratureError(ArithmeticError):
    def __init__(self, message, estimates):
        super().__init__(message)
        self.estimates = estimates


class BoxTooSmallError(OracleError):
    """The Dirichlet box cuts into the ground-state tail."""


class SlowConvergenceWarning(UserWarning):
    pass


# ---------------------------------------------------------------------------
# quadrature

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def _composite_gl(f, lo: float, hi: float, panels: int) -> float:
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mids = 0.5 * (edges[1:] + edges[:-1])
    x = (mids[:, None] + half[:, None] * _GL_NODES[None, :]).ravel()
    w = (half[:, None] * _GL_WEIGHTS[None, :]).ravel()
    return float(np.dot(w, np.asarray(f(x), dtype=float)))


def quadrature(f, lo: float, hi: float, panels: int = 1, tol: float = 1e-12,
               rtol: float = 1e-14, max_doublings: int = 20) -> float:
    """Composite 16-point Gauss-Legendre with panel doubling.

    ``f`` must accept a NumPy array. An infinite upper limit is mapped
    through ``x = lo + t / (1 - t)``. Doubling stops once two successive
    estimates differ by less than ``tol + rtol * |I|``.
    """
    if hi == math.inf:
        def g(t):
            return f(lo + t / (1.0 - t)) / (1.0 - t) ** 2
        return quadrature(g, 0.0, 1.0, panels, tol, rtol, max_doublings)
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("only [finite, finite] or [finite, inf) intervals are supported")
    prev = _composite_gl(f, lo, hi, panels)
    for _ in range(max_doublings):
        panels *= 2
        cur = _composite_gl(f, lo, hi, panels)
        if abs(cur - prev) < tol + rtol * abs(cur):
            return cur
        prev = cur
    raise QuadratureError(f"no convergence after {max_doublings} doublings: "
                          f"{prev!r} vs {cur!r}", (prev, cur))


# ---------------------------------------------------------------------------
# grids and eigen results


@dataclass(frozen=True)
class Grid1D:
    """Uniform grid on ``[lo, hi]`` with ``cells`` intervals.

    ``kind="vertex"`` puts unknowns on the interior vertices (Dirichlet
    ends); ``kind="cell"`` puts them at cell centres, which is what the
    polar problem uses so the pole fluxes vanish naturally.
    """

    lo: float
    hi: float
    cells: int
    kind: str = "vertex"

    def __post_init__(self):
        if not self.hi > self.lo:
            raise ValueError("grid needs hi > lo")
        if self.cells < 2:
            raise ValueError("grid needs at least two cells")
        if self.kind not in ("vertex", "cell"):
            raise ValueError(f"unknown grid kind {self.kind!r}")

    @property
    def h(self) -> float:
        return (self.hi - self.lo) / self.cells

    @property
    def points(self) -> np.ndarray:
        if self.kind == "vertex":
            return self.lo + self.h * np.arange(1, self.cells)
        return self.lo + self.h * (np.arange(self.cells) + 0.5)

    def refined(self) -> "Grid1D":
        return Grid1D(self.lo, self.hi, 2 * self.cells, self.kind)


@dataclass(frozen=True)
class EigenResult:
    eigenvalues: np.ndarray
    grid: Grid1D
    extrapolated: bool
    errors: np.ndarray
    coarse: np.ndarray
    fine: np.ndarray | None = None

    def bound(self) -> np.ndarray:
        """Negative part of the spectrum (bound states of the radial problem)."""
        return self.eigenvalues[self.eigenvalues < 0]


def radial_grid(h: float, r_max: float) -> Grid1D:
    return Grid1D(0.0, r_max, int(round(r_max / h)), "vertex")


def angular_grid(cells: int) -> Grid1D:
    return Grid1D(0.0, math.pi, cells, "cell")


def _richardson(solve, grid: Grid1D, count: int, richardson: bool) -> EigenResult:
    coarse = solve(grid)
    if not richardson:
        return EigenResult(coarse, grid, False, np.full(count, np.nan), coarse)
    fine = solve(grid.refined())
    extrap = (4.0 * fine - coarse) / 3.0
    return EigenResult(extrap, grid, True, np.abs(coarse - fine) / 3.0, coarse, fine)


# ---------------------------------------------------------------------------
# radial problem: -R'' + (l(l+1)/r^2 - 2 s / r) R = k^2 R, R(0) = R(r_max) = 0


def _radial_matrix(ell: float, s: float, grid: Grid1D):
    r = grid.points
    h = grid.h
    diag = 2.0 / h**2 + ell * (ell + 1) / r**2 - 2.0 * s / r
    off = np.full(len(r) - 1, -1.0 / h**2)
    return diag, off


def radial_fd_eigen(ell: float, s: float, grid: Grid1D, count: int,
                    richardson: bool = True, check_box: bool = True) -> EigenResult:
    """Lowest ``count`` values of ``k^2`` for the Coulomb-like radial equation.

    Second-order central differences, one Richardson step (grid and its
    halving) unless ``richardson=False``.
    """
    if ell < 0:
        raise OracleError(f"ell must be >= 0 (got {ell})")
    if s < 0:
        raise OracleError(f"s must be >= 0 (got {s})")
    if grid.kind != "vertex" or grid.lo != 0:
        raise OracleError("radial grid must be a vertex grid starting at r=0")

    def solve(g):
        return tridiag.lowest_eigenvalues(*_radial_matrix(ell, s, g), count)

    res = _richardson(solve, grid, count, richardson)
    if check_box and count and res.eigenvalues[0] < 0:
        kappa = math.sqrt(-res.eigenvalues[0])
        tail = math.exp(-kappa * grid.hi) * (kappa * grid.hi) ** (ell + 1)
        if tail > 1e-8:
            raise BoxTooSmallError(
                f"r_max={grid.hi} too small: ground-state tail estimate {tail:.2e} > 1e-8")
    return res


# ---------------------------------------------------------------------------
# polar problem: -(1/sin)(sin Theta')' + (q / sin^2) Theta = lambda Theta,
# q = m^2 + beta' + gamma' cos(theta)


def _angular_matrix(m: int, beta_p: float, gamma_p: float, grid: Grid1D):
    th = grid.points
    h = grid.h
    n = len(th)
    sin_c = np.sin(th)
    w = np.sin(h * np.arange(1, n))  # interface weights sin(theta_{i+1/2}); pole fluxes vanish
    flux = np.zeros(n)
    flux[:-1] += w
    flux[1:] += w
    q = m * m + beta_p + gamma_p * np.cos(th)
    # symmetric form of the weighted problem: W^{-1/2} A W^{-1/2}, W = diag(sin theta_i)
    diag = flux / (h**2 * sin_c) + q / sin_c**2
    off = -w / (h**2 * np.sqrt(sin_c[:-1] * sin_c[1:]))
    return diag, off


def angular_fd_eigen(m: int, beta_p: float, gamma_p: float, grid: Grid1D, count: int,
                     richardson: bool = True) -> EigenResult:
    """Lowest ``count`` separation constants ``lambda`` of the polar equation.

    Finite-volume discretisation on cell centres, symmetrised by the
    ``sqrt(sin theta)`` similarity transform.
    """
    base = m * m + beta_p
    if base - abs(gamma_p) < 0:
        raise OracleError(f"polar channel unbound: m^2 + beta' - |gamma'| = {base - abs(gamma_p)}")
    if grid.kind != "cell":
        raise OracleError("polar grid must be cell-centred on (0, pi)")
    if base - abs(gamma_p) < 0.25:
        warnings.warn("endpoint exponent below 1/4: expect slow grid convergence",
                      SlowConvergenceWarning, stacklevel=2)

    def solve(g):
        return tridiag.lowest_eigenvalues(*_angular_matrix(m, beta_p, gamma_p, g), count)

    return _richardson(solve, grid, count, richardson)


def convergence_ratio(solver, grid: Grid1D, count: int, **kwargs) -> np.ndarray:
    """Observed order ratio ``(l(h) - l(h/2)) / (l(h/2) - l(h/4))`` per level.

    ``solver`` is :func:`radial_fd_eigen` or :func:`angular_fd_eigen`;
    ``kwargs`` carries its physics arguments. A second-order scheme gives 4.
    """
    g1 = grid.refined()
    l0, l1, l2 = (solver(grid=g, count=count, richardson=False, **kwargs).eigenvalues
                  for g in (grid, g1, g1.refined()))
    return (l0 - l1) / (l1 - l2)


def radial_box(ell: float, s: float, N: int, h: float) -> Grid1D:
    """Vertex grid on ``[0, r_max]`` wide enough for the lowest ``N + 1`` states.

    Starts from ``r_max = (l + n' + 10 sqrt(n')) / kappa`` with the
    hydrogen-like estimate ``kappa = s / n'`` for the highest state and grows
    it by half until that state's tail ``exp(-kappa r) (2 kappa r)^n'`` is
    below 1e-12.
    """
    n_p = N + ell + 1
    kappa = s / n_p
    r_max = (ell + n_p + 10 * math.sqrt(n_p)) / kappa
    while math.exp(-kappa * r_max) * (2 * kappa * r_max) ** n_p > 1e-12:
        r_max *= 1.5
    return radial_grid(h, h * math.ceil(r_max / h))


# ---------------------------------------------------------------------------
# end-to-end energy from discretisations only


def _ell_of(lam: float) -> float:
    return (-1.0 + math.sqrt(1.0 + 4.0 * lam)) / 2.0


def _radial_level(ell: float, s: float, N: int, h: float, r_max: float = 40.0) -> tuple[float, float]:
    # grow the box until the N-th state's tail is negligible; returns (k^2, r_max used)
    while True:
        grid = radial_grid(h, r_max)
        res = radial_fd_eigen(ell, s, grid, N + 1, check_box=False)
        k2 = res.eigenvalues[N]
        if k2 < 0:
            kappa = math.sqrt(-k2)
            tail = math.exp(-kappa * r_max) * (2 * kappa * r_max) ** (N + ell + 1)
            if tail < 1e-12:
                return float(k2), r_max
        if r_max > 4000:
            return float(k2), r_max
        r_max *= 2.0


def self_consistent_oracle(params, qn, h: float = 1e-3, angular_cells: int = 2000,
                           tol: float = 1e-8) -> float:
    """Energy of state ``qn`` using only finite-difference eigensolves.

    For a trial ``E`` the polar eigenvalue gives ``l``, the radial eigenvalue
    at ``s(E)`` gives ``k^2(E)``, and ``F(E) = k^2(E) - (E^2 - M^2)`` is
    bisected to ``tol``. ``params`` needs ``alpha, beta, gamma, M``; ``qn``
    needs ``N, n, m``.
    """
    M = params.M
    grid_a = angular_grid(angular_cells)
    box = {"r_max": 40.0}

    def F(E):
        w = E + M
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", SlowConvergenceWarning)
            lam = angular_fd_eigen(qn.m, w * params.beta, w * params.gamma, grid_a, qn.n + 1)
        ell = _ell_of(lam.eigenvalues[qn.n])
        k2, box["r_max"] = _radial_level(ell, w * params.alpha / 2, qn.N, h, box["r_max"])
        return k2 - (E * E - M * M)

    # F < 0 near E = M (bound level below threshold); scan down for F > 0
    hi = M * (1 - 1e-3)
    f_hi = F(hi)
    if f_hi >= 0:
        raise OracleError("oracle found no bound state: F(E) >= 0 just below E = M")
    lo = None
    for frac in np.linspace(1 - 1e-3, -1 + 1e-2, 41)[1:]:
        E = M * frac
        fe = F(E)
        if fe > 0:
            lo = E
            break
        hi = E
    if lo is None:
        raise OracleError("oracle found no bound state: no sign change of F on (-M, M)")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if F(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# Legendre functions for pointwise comparisons


def associated_legendre(ell: int, m: int, x):
    """Normalised associated Legendre function ``sqrt((2l+1)/2 (l-m)!/(l+m)!) P_l^m(x)``.

    Computed by the standard upward recurrence in ``l`` from the closed form
    at ``l = m``; the Condon-Shortley phase is omitted.
    """
    m = abs(m)
    if ell < m:
        raise ValueError("need ell >= |m|")
    x = np.asarray(x, dtype=float)
    somx2 = np.sqrt(np.maximum(0.0, 1.0 - x * x))
    # normalised P_m^m
    pmm = np.full_like(x, math.sqrt(0.5))
    for k in range(1, m + 1):
        pmm = pmm * math.sqrt((2 * k + 1) / (2 * k)) * somx2
    if ell == m:
        return pmm
    pm1 = x * math.sqrt(2 * m + 3) * pmm
    if ell == m + 1:
        return pm1
    p_prev, p_cur = pmm, pm1
    for l in range(m + 2, ell + 1):
        a = math.sqrt((4 * l * l - 1) / (l * l - m * m))
        b = math.sqrt(((l - 1) ** 2 - m * m) / (4 * (l - 1) ** 2 - 1))
        p_prev, p_cur = p_cur, a * (x * p_cur - b * p_prev)
    return p_cur
