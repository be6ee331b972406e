"""Spin-0 (Klein-Gordon) bound states in a Coulomb plus ring-shaped potential.

Natural units (hbar = c = 1). The potential is

    V(r, theta) = -alpha / r + (beta + gamma cos(theta)) / (r^2 sin^2(theta))

and enters the Klein-Gordon equation through ``(E + M) V``. Separation gives a
Coulomb-like radial problem with ``s = (E + M) alpha / 2`` and
``k^2 = E^2 - M^2`` and a polar problem whose boundary exponents depend on the
energy through ``beta' = (E + M) beta`` and ``gamma' = (E + M) gamma``. Because
of that dependence the full spectrum is an implicit equation in ``E``, solved
here by bracketed bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import aim
from .polyfield import EXACT, ParamPoly, Poly, RatFunc, to_scalar

__all__ = [
    "DomainError",
    "UnboundChannelError",
    "NoBoundStateError",
    "ModelParams",
    "param_violations",
    "QuantumNumbers",
    "RadialChannel",
    "AngularChannel",
    "SpectrumEntry",
    "radial_aim_problem",
    "angular_aim_problem",
    "radial_energy_closed_form",
    "energy_from_nu",
    "ell_from_t",
    "angular_exponents",
    "effective_ell",
    "separation_constants",
    "spectrum_rhs",
    "self_consistent_spectrum",
    "aim_radial_nu",
    "aim_angular_ell",
    "aim_spectrum_entry",
]

SCAN_INTERVALS = 512


class DomainError(ValueError):
    pass


class UnboundChannelError(ValueError):
    """The polar channel has a negative radicand, so no normalisable solution."""

    def __init__(self, message, radicand=None, energy=None):
        super().__init__(message)
        self.radicand = radicand
        self.energy = energy


class NoBoundStateError(ValueError):
    pass


def param_violations(alpha, beta, gamma, M) -> list[str]:
    """Every constraint the potential parameters break (empty if valid)."""
    out = []
    for name, v in (("alpha", alpha), ("beta", beta), ("gamma", gamma), ("M", M)):
        if isinstance(v, bool) or not isinstance(v, (int, float, Fraction)):
            out.append(f"{name} must be a number (got {v!r})")
        elif not math.isfinite(v):
            out.append(f"{name} must be finite (got {v})")
        elif name in ("alpha", "M") and not v > 0:
            out.append(f"{name} must be > 0 (got {v})")
        elif name == "beta" and not v >= 0:
            out.append(f"beta must be >= 0 (got {v})")
    return out


@dataclass(frozen=True)
class ModelParams:
    alpha: float
    beta: float = 0.0
    gamma: float = 0.0
    M: float = 1.0

    def __post_init__(self):
        problems = self.violations()
        if problems:
            raise DomainError("; ".join(problems))

    def violations(self) -> list[str]:
        return param_violations(self.alpha, self.beta, self.gamma, self.M)

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma, "M": self.M}


@dataclass(frozen=True, order=True)
class QuantumNumbers:
    N: int
    n: int
    m: int

    def __post_init__(self):
        if self.N < 0 or self.n < 0:
            raise DomainError(f"N and n must be >= 0 (got N={self.N}, n={self.n})")

    def n_prime(self, ell: float) -> float:
        return self.N + ell + 1


@dataclass(frozen=True)
class RadialChannel:
    ell: float
    s: float
    k2: float
    kappa: float
    x_scale: float  # x = x_scale * r

    @classmethod
    def from_energy(cls, params: ModelParams, E: float, ell: float) -> "RadialChannel":
        if not abs(E) < params.M:
            raise DomainError(f"|E|={abs(E)} >= M: not a bound state")
        k2 = E * E - params.M**2
        kappa = math.sqrt(-k2)
        return cls(ell=ell, s=(E + params.M) * params.alpha / 2, k2=k2, kappa=kappa,
                   x_scale=2 * kappa)


@dataclass(frozen=True)
class AngularChannel:
    beta_p: float
    gamma_p: float
    a: float
    b: float
    m_abs: int

    @classmethod
    def from_energy(cls, params: ModelParams, E: float, m: int) -> "AngularChannel":
        bp, gp = (E + params.M) * params.beta, (E + params.M) * params.gamma
        a, b = angular_exponents(m, bp, gp)
        return cls(beta_p=bp, gamma_p=gp, a=a, b=b, m_abs=abs(m))


@dataclass(frozen=True)
class SpectrumEntry:
    qn: QuantumNumbers
    energy: float
    ell_eff: float
    residual: float
    source: str  # "closed_form" | "aim" | "oracle"
    alternatives: tuple = field(default=())

    @property
    def multiple(self) -> bool:
        return bool(self.alternatives)

    def as_dict(self) -> dict:
        d = {"N": self.qn.N, "n": self.qn.n, "m": self.qn.m, "E": self.energy,
             "ell_eff": self.ell_eff, "residual": self.residual, "source": self.source}
        if self.alternatives:
            d["alternatives"] = list(self.alternatives)
        return d


# ---------------------------------------------------------------------------
# AIM coefficient builders


# Exact arithmetic is the default even for irrational inputs (taken at their
# decimal value): float-mode AIM loses the exact cancellations that keep the
# delta_n numerator a pure x^n * P(parameter), and the low roots drift badly.
DEFAULT_AIM_MODE = EXACT


def radial_aim_problem(ell, mode: str | None = None) -> aim.AimProblem:
    """``lambda0 = -(2l + 2 - x)/x``, ``s0 = (l + 1 - nu)/x`` in ``x = 2 kappa r``.

    The eigen-parameter ``nu = s / kappa`` quantises as ``nu = l + 1 + N``.
    """
    if ell < 0:
        raise DomainError(f"ell must be >= 0 (got {ell})")
    mode = mode or DEFAULT_AIM_MODE
    l = to_scalar(ell, mode)
    one = to_scalar(1, mode)
    x = Poly([0, one], mode=mode)
    lam0 = RatFunc(ParamPoly([[-(2 * l + 2)], [one]], mode=mode), x, 1)
    s0 = RatFunc(ParamPoly([[l + 1, -one]], mode=mode), x, 1)
    return aim.AimProblem(lam0, s0, "nu", (0, math.inf))


def angular_aim_problem(a, b, mode: str | None = None) -> aim.AimProblem:
    """Polar AIM pair in ``y = (1 + cos theta)/2`` with parameter ``t = l(l+1)``.

    ``lambda0 = -(2a + 1 - 2(a + b + 1) y) / (y(1-y))`` and
    ``s0 = ((a + b)(a + b + 1) - t) / (y(1-y))``.
    """
    if a < 0 or b < 0:
        raise DomainError(f"a and b must be >= 0 (got a={a}, b={b})")
    mode = mode or DEFAULT_AIM_MODE
    a_, b_ = to_scalar(a, mode), to_scalar(b, mode)
    one = to_scalar(1, mode)
    # y(1-y) = -(y^2 - y); the minus sign is folded into the numerators
    base = Poly([0, -one, one], mode=mode)
    lam0 = RatFunc(ParamPoly([[2 * a_ + 1], [-2 * (a_ + b_ + 1)]], mode=mode), base, 1)
    c0 = (a_ + b_) * (a_ + b_ + 1)
    s0 = RatFunc(ParamPoly([[-c0, one]], mode=mode), base, 1)
    return aim.AimProblem(lam0, s0, "t", (0, 1))


# ---------------------------------------------------------------------------
# closed forms


def energy_from_nu(M: float, alpha: float, nu: float) -> float:
    """Invert ``nu = s / kappa`` for ``E``.

    With ``s = (E+M) alpha/2`` and ``kappa^2 = M^2 - E^2`` the relation
    reduces to ``(E+M) alpha^2/4 = nu^2 (M - E)``.
    """
    q = alpha * alpha / 4
    n2 = nu * nu
    return M * (n2 - q) / (n2 + q)


def radial_energy_closed_form(M: float, alpha: float, ell: float, N: int) -> float:
    if not (M > 0 and alpha > 0 and ell >= 0 and N >= 0):
        raise DomainError(f"invalid arguments M={M}, alpha={alpha}, ell={ell}, N={N}")
    return energy_from_nu(M, alpha, ell + 1 + N)


def angular_exponents(m: int, beta_p: float, gamma_p: float) -> tuple[float, float]:
    base = m * m + beta_p
    ra, rb = base - gamma_p, base + gamma_p
    for name, rad in (("m^2 + beta' - gamma'", ra), ("m^2 + beta' + gamma'", rb)):
        if rad < 0:
            raise UnboundChannelError(f"unbound angular channel: {name} = {rad} < 0", radicand=rad)
    return math.sqrt(ra) / 2, math.sqrt(rb) / 2


def effective_ell(m: int, beta_p: float, gamma_p: float, n: int) -> float:
    base = m * m + beta_p
    inner = base * base - gamma_p * gamma_p
    if inner < 0 or base < 0:
        raise UnboundChannelError(
            f"unbound angular channel: (m^2 + beta')^2 - gamma'^2 = {inner}", radicand=inner)
    return math.sqrt((base + math.sqrt(inner)) / 2) + n


def separation_constants(ell: float) -> float:
    return ell * (ell + 1)


def ell_from_t(t: float) -> float:
    """Non-negative root of ``l(l+1) = t``."""
    return (-1 + math.sqrt(1 + 4 * t)) / 2


def spectrum_rhs(params: ModelParams, qn: QuantumNumbers, E: float) -> tuple[float, float]:
    """Right-hand side of the implicit spectrum equation at trial energy ``E``.

    Returns ``(energy, ell_eff)``.
    """
    w = E + params.M
    try:
        ell = effective_ell(qn.m, w * params.beta, w * params.gamma, qn.n)
    except UnboundChannelError as exc:
        raise UnboundChannelError(f"{exc} at probe E={E}", radicand=exc.radicand,
                                  energy=E) from None
    return radial_energy_closed_form(params.M, params.alpha, ell, qn.N), ell


def _bisect(g, lo: float, hi: float, glo: float) -> tuple[float, float]:
    """Bisect a sign change of ``g`` down to adjacent doubles."""
    ghi = g(hi)
    while True:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        gm = g(mid)
        if gm == 0:
            return mid, 0.0
        if (gm > 0) == (glo > 0):
            lo, glo = mid, gm
        else:
            hi, ghi = mid, gm
    return (lo, glo) if abs(glo) <= abs(ghi) else (hi, ghi)


def self_consistent_spectrum(params: ModelParams, qn: QuantumNumbers) -> SpectrumEntry:
    """Solve ``E = RHS(E)`` on ``(-M, M)``.

    The interval is scanned on 512 subintervals; every sign change of
    ``g(E) = E - RHS(E)`` is bisected. The lowest root is returned and any
    further roots are listed in ``alternatives``. With ``beta = gamma = 0`` the
    right-hand side does not depend on ``E`` and is returned directly.
    """
    M = params.M
    if params.beta == 0 and params.gamma == 0:
        ell = abs(qn.m) + qn.n
        E = radial_energy_closed_form(M, params.alpha, ell, qn.N)
        return SpectrumEntry(qn, E, float(ell), 0.0, "closed_form")

    def g(E):
        return E - spectrum_rhs(params, qn, E)[0]

    eps = 1e-9 * M
    lo, hi = -M + eps, M - eps
    grid = [lo + (hi - lo) * i / SCAN_INTERVALS for i in range(SCAN_INTERVALS + 1)]
    vals = [g(E) for E in grid]
    roots = []
    for (e0, g0), (e1, g1) in zip(zip(grid, vals), zip(grid[1:], vals[1:])):
        if g0 == 0:
            roots.append((e0, 0.0))
        elif (g0 > 0) != (g1 > 0) and g1 != 0:
            roots.append(_bisect(g, e0, e1, g0))
    if vals[-1] == 0:
        roots.append((grid[-1], 0.0))
    if not roots:
        raise NoBoundStateError(f"no self-consistent bound state for {qn} with {params}")
    E, resid = roots[0]
    ell = spectrum_rhs(params, qn, E)[1]
    return SpectrumEntry(qn, E, ell, abs(resid), "closed_form",
                         tuple(r[0] for r in roots[1:]))


# ---------------------------------------------------------------------------
# AIM-sourced spectrum


def aim_radial_nu(ell, N: int, n_iter: int = 12, x0=1, mode: str = EXACT) -> float:
    """``nu`` of the ``N``-th radial state read off the AIM termination roots."""
    if n_iter <= N:
        raise ValueError(f"n_iter={n_iter} cannot resolve N={N}")
    prob = radial_aim_problem(ell, mode)
    trace = aim.run_iterations(prob, n_iter)
    l = to_scalar(ell, prob.mode)
    rep = aim.quantization_roots(trace, x0, n_iter, (l, l + N + 2))
    roots = [r for r in rep.roots if r > l]
    return float(roots[N])


def aim_angular_ell(a, b, n: int, n_iter: int = 12, y0=Fraction(1, 2), mode: str = EXACT) -> float:
    """Effective ``l`` of the ``n``-th polar state from the AIM ``t``-roots."""
    if n_iter <= n:
        raise ValueError(f"n_iter={n_iter} cannot resolve n={n}")
    prob = angular_aim_problem(a, b, mode)
    trace = aim.run_iterations(prob, n_iter)
    a_, b_ = to_scalar(a, prob.mode), to_scalar(b, prob.mode)
    top = (a_ + b_ + n + 1) * (a_ + b_ + n + 2)
    rep = aim.quantization_roots(trace, y0, n_iter, (-1e-9, top))
    return ell_from_t(float(rep.roots[n]))


def aim_spectrum_entry(params: ModelParams, qn: QuantumNumbers, n_iter: int | None = None,
                       max_steps: int = 60) -> SpectrumEntry:
    """Self-consistent energy with both ``l`` and ``nu`` taken from AIM roots.

    Fixed-point iteration ``E <- E(nu_AIM(l_AIM(E)))`` started from the
    pure-Coulomb value. The residual is measured against the closed-form
    right-hand side.
    """
    M = params.M
    if n_iter is None:
        n_iter = max(qn.N, qn.n) + 2
    E = radial_energy_closed_form(M, params.alpha, abs(qn.m) + qn.n, qn.N)
    ell = float(abs(qn.m) + qn.n)
    for _ in range(max_steps):
        ch = AngularChannel.from_energy(params, E, qn.m)
        ell = aim_angular_ell(ch.a, ch.b, qn.n, n_iter)
        nu = aim_radial_nu(ell, qn.N, n_iter)
        E_new = energy_from_nu(M, params.alpha, nu)
        if abs(E_new - E) <= 1e-14 * M:
            E = E_new
            break
        E = E_new
    else:
        raise NoBoundStateError(f"AIM fixed point did not settle for {qn}")
    resid = abs(E - spectrum_rhs(params, qn, E)[0])
    return SpectrumEntry(qn, E, ell, resid, "aim")
