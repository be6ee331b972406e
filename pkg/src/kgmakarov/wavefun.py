"""Normalised eigenfunctions ``psi = (R(r)/r) Theta(theta) Phi(phi)``.

Radial part, with ``n' = N + l + 1`` and ``x = (E + M) alpha r / n'``::

    R(r) = C_R x^(l+1) exp(-x/2) L_N^(2l+1)(x)

Polar part, with ``y = (1 + cos theta)/2`` and ``l = a + b + n``::

    Theta(theta) = C_T y^a (1-y)^b 2F1(-n, a + b + l + 1; 2a + 1; y)

Both constants are fixed by quadrature (``int R^2 dr = 1`` and
``int Theta^2 sin(theta) dtheta = 1``); the textbook closed forms are
reported alongside for audit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .model import DomainError, ModelParams, angular_exponents
from .oracle import quadrature
from .specfun import gauss2f1_poly, laguerre_gen

__all__ = [
    "ConsistencyError",
    "RadialWave",
    "AngularWave",
    "PsiSample",
    "radial_wave",
    "radial_norm_audit",
    "radial_gram_matrix",
    "angular_wave",
    "angular_norm_audit",
    "angular_gram_matrix",
    "azimuthal_wave",
    "assemble_psi",
    "count_sign_changes",
]


class ConsistencyError(ValueError):
    pass


def count_sign_changes(values) -> int:
    v = np.asarray(values, dtype=float)
    tol = 1e-12 * float(np.max(np.abs(v))) if v.size else 0.0
    s = np.sign(v[np.abs(v) > tol])
    return int(np.count_nonzero(s[1:] != s[:-1]))


# ---------------------------------------------------------------------------
# radial


@dataclass(frozen=True)
class RadialWave:
    N: int
    ell: float
    n_prime: float
    x_scale: float  # x = x_scale * r
    norm_analytic: float
    norm_numeric: float
    samples: list = field(default_factory=list)

    @property
    def kappa(self) -> float:
        return self.x_scale / 2

    def shape(self, r):
        """Unnormalised ``x^(l+1) e^(-x/2) L(x)``."""
        x = self.x_scale * np.asarray(r, dtype=float)
        with np.errstate(divide="ignore"):
            env = np.where(x > 0, np.exp((self.ell + 1) * np.log(np.where(x > 0, x, 1.0)) - x / 2), 0.0)
        return env * laguerre_gen(self.N, 2 * self.ell + 1, x)

    def __call__(self, r):
        return self.norm_numeric * self.shape(r)

    def over_r(self, r):
        """``R(r) / r``, finite at the origin."""
        r = np.asarray(r, dtype=float)
        x = self.x_scale * r
        with np.errstate(divide="ignore", invalid="ignore"):
            pw = np.where(x > 0, x, 1.0) ** self.ell
        pw = np.where(x > 0, pw, 1.0 if self.ell == 0 else 0.0)
        return (self.norm_numeric * self.x_scale * pw * np.exp(-x / 2)
                * laguerre_gen(self.N, 2 * self.ell + 1, x))


def _radial_r_max(ell: float, n_prime: float, kappa: float) -> float:
    return (ell + n_prime + 10 * math.sqrt(n_prime)) / kappa


def _radial_integral(f, r_max: float) -> float:
    # integrate on [0, r_max], doubling r_max until the tail is negligible
    total = quadrature(f, 0.0, r_max, panels=8)
    while True:
        tail = quadrature(f, r_max, 2 * r_max, panels=8)
        total += tail
        r_max *= 2
        if abs(tail) < 1e-12 * max(abs(total), 1e-300):
            return total


def _radial_printed_constant(E: float, M: float, alpha: float, ell: float, N: int) -> float:
    n_prime = N + ell + 1
    log_d2 = (math.log((E + M) * alpha) + math.lgamma(N + 1)
              - 2 * math.log(n_prime) - math.lgamma(n_prime + ell + 1))
    return math.exp(0.5 * log_d2)


def radial_wave(params: ModelParams, E: float, ell: float, N: int, r_grid=()) -> RadialWave:
    if not abs(E) < params.M:
        raise DomainError(f"|E|={abs(E)} >= M={params.M}: not a bound state")
    if ell < 0 or N < 0:
        raise DomainError(f"need ell >= 0 and N >= 0 (got {ell}, {N})")
    n_prime = N + ell + 1
    x_scale = (E + params.M) * params.alpha / n_prime
    proto = RadialWave(N, ell, n_prime, x_scale, 0.0, 1.0)
    integral = _radial_integral(lambda r: proto.shape(r) ** 2,
                                _radial_r_max(ell, n_prime, x_scale / 2))
    wave = RadialWave(N, ell, n_prime, x_scale,
                      _radial_printed_constant(E, params.M, params.alpha, ell, N),
                      1.0 / math.sqrt(integral))
    r = np.asarray(r_grid, dtype=float)
    samples = list(zip(r.tolist(), np.atleast_1d(wave(r)).tolist())) if r.size else []
    return RadialWave(**{**wave.__dict__, "samples": samples})


def radial_norm_audit(params: ModelParams, E: float, ell: float, N: int) -> tuple[float, float, float]:
    """``(printed constant, quadrature constant, ratio)``."""
    w = radial_wave(params, E, ell, N)
    return w.norm_analytic, w.norm_numeric, w.norm_analytic / w.norm_numeric


def radial_gram_matrix(ell: float, N_max: int) -> np.ndarray:
    """Overlaps of the Laguerre-level radial functions at a common ``x`` scale.

    ``G[i, j] = int_0^inf x^(2l+1) e^(-x) L_i L_j dx`` after normalising each
    function by quadrature; orthonormality means ``G = I``.
    """
    alpha = 2 * ell + 1

    def inner(i, j):
        def f(x):
            with np.errstate(divide="ignore"):
                w = np.where(x > 0, np.exp(alpha * np.log(np.where(x > 0, x, 1.0)) - x), 0.0)
            return w * laguerre_gen(i, alpha, x) * laguerre_gen(j, alpha, x)
        return _radial_integral(f, 2 * (N_max + ell + 10 * math.sqrt(N_max + ell + 1)))

    raw = np.array([[inner(i, j) for j in range(N_max + 1)] for i in range(N_max + 1)])
    d = np.sqrt(np.diag(raw))
    return raw / np.outer(d, d)


# ---------------------------------------------------------------------------
# polar


@dataclass(frozen=True)
class AngularWave:
    a: float
    b: float
    n: int
    m_abs: int
    ell_eff: float
    norm_analytic: float
    norm_numeric: float
    samples: list = field(default_factory=list)

    def shape(self, theta):
        th = np.asarray(theta, dtype=float)
        y = np.clip((1 + np.cos(th)) / 2, 0.0, 1.0)
        B = self.a + self.b + self.ell_eff + 1
        return (y**self.a * (1 - y) ** self.b
                * gauss2f1_poly(self.n, B, 2 * self.a + 1, y))

    def __call__(self, theta):
        return self.norm_numeric * self.shape(theta)


def _graded_theta_integral(f) -> float:
    # theta = pi (tau - sin(2 pi tau)/(2 pi)) clusters nodes at both poles,
    # smoothing the y^a, (1-y)^b endpoint behaviour
    def g(tau):
        th = math.pi * (tau - np.sin(2 * math.pi * tau) / (2 * math.pi))
        return f(th) * math.pi * (1 - np.cos(2 * math.pi * tau))
    return quadrature(g, 0.0, 1.0, panels=8)


def _angular_printed_constant(a: float, b: float, ell: float, n: int) -> float:
    log_n2 = (math.lgamma(ell + a + b + 1) + math.lgamma(ell + a - b + 1) + math.log(2 * ell + 1)
              - math.log(2) - math.lgamma(n + 1) - math.lgamma(ell - a + b + 1))
    return math.exp(0.5 * log_n2 - math.lgamma(2 * a + 1))


def angular_wave(m: int, beta_p: float, gamma_p: float, n: int, theta_grid=()) -> AngularWave:
    if n < 0:
        raise DomainError(f"n must be >= 0 (got {n})")
    a, b = angular_exponents(m, beta_p, gamma_p)
    ell = a + b + n
    proto = AngularWave(a, b, n, abs(m), ell, 0.0, 1.0)
    integral = _graded_theta_integral(lambda th: proto.shape(th) ** 2 * np.sin(th))
    wave = AngularWave(a, b, n, abs(m), ell, _angular_printed_constant(a, b, ell, n),
                       1.0 / math.sqrt(integral))
    th = np.asarray(theta_grid, dtype=float)
    samples = list(zip(th.tolist(), np.atleast_1d(wave(th)).tolist())) if th.size else []
    return AngularWave(**{**wave.__dict__, "samples": samples})


def angular_norm_audit(m: int, beta_p: float, gamma_p: float, n: int) -> tuple[float, float, float]:
    w = angular_wave(m, beta_p, gamma_p, n)
    return w.norm_analytic, w.norm_numeric, w.norm_analytic / w.norm_numeric


def angular_gram_matrix(m: int, beta_p: float, gamma_p: float, n_max: int) -> np.ndarray:
    """``G[i, j] = int Theta_i Theta_j sin(theta) dtheta`` for ``i, j <= n_max``."""
    waves = [angular_wave(m, beta_p, gamma_p, n) for n in range(n_max + 1)]
    return np.array([[_graded_theta_integral(lambda th: wi(th) * wj(th) * np.sin(th))
                      for wj in waves] for wi in waves])


# ---------------------------------------------------------------------------
# azimuthal and full wavefunction


def azimuthal_wave(m: int, phi_grid) -> np.ndarray:
    phi = np.asarray(phi_grid, dtype=float)
    return np.exp(1j * m * phi) / math.sqrt(2 * math.pi)


@dataclass(frozen=True)
class PsiSample:
    r: float
    theta: float
    phi: float
    value: complex


def assemble_psi(radial: RadialWave, angular: AngularWave, m: int, points) -> list[PsiSample]:
    """Evaluate ``psi`` at ``(r, theta, phi)`` triples."""
    if abs(radial.ell - angular.ell_eff) > 1e-9 * max(1.0, angular.ell_eff):
        raise ConsistencyError(
            f"radial l={radial.ell} does not match polar l={angular.ell_eff}")
    if abs(m) != angular.m_abs:
        raise ConsistencyError(f"|m|={abs(m)} does not match polar channel |m|={angular.m_abs}")
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    r, th, ph = pts[:, 0], pts[:, 1], pts[:, 2]
    vals = radial.over_r(r) * angular(th) * azimuthal_wave(m, ph)
    return [PsiSample(float(a), float(b), float(c), complex(v))
            for a, b, c, v in zip(r, th, ph, vals)]
