"""Asymptotic iteration method on rational coefficient functions.

For an equation ``f'' = lambda0 f' + s0 f`` the method iterates

    lambda_n = lambda_{n-1}' + s_{n-1} + lambda0 * lambda_{n-1}
    s_n      = s_{n-1}'      + s0 * lambda_{n-1}

and quantises the eigen-parameter through the roots of
``delta_n = s_n lambda_{n-1} - lambda_n s_{n-1}``. All sequences are kept as
:class:`~kgmakarov.polyfield.RatFunc` objects over a common denominator base,
so ``delta_n`` is a numerator polynomial in ``(x, p)`` plus a power of the base.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .polyfield import (
    EXACT,
    PoleError,
    RatFunc,
    ZeroPolynomialError,
    _check_scalar,
    poly_real_roots,
    to_scalar,
)

__all__ = [
    "MAX_ITERATIONS",
    "IterationCapError",
    "DegenerateEvaluationError",
    "AimProblem",
    "AimTrace",
    "RootReport",
    "aim_step",
    "run_iterations",
    "quantization_roots",
    "root_stability",
    "recurrence_check_point",
]

MAX_ITERATIONS = 60


class IterationCapError(ValueError):
    pass


class DegenerateEvaluationError(ValueError):
    pass


@dataclass(frozen=True)
class AimProblem:
    """Coefficient pair of ``f'' = lambda0 f' + s0 f``.

    ``domain_hint`` is the open interval of admissible evaluation points; it
    must not contain a pole of ``lambda0`` or ``s0``.
    """

    lambda0: RatFunc
    s0: RatFunc
    parameter_name: str
    domain_hint: tuple

    def __post_init__(self):
        if self.lambda0.mode != self.s0.mode:
            raise ValueError("lambda0 and s0 must share the scalar mode")
        if self.lambda0.power and self.s0.power and self.lambda0.base != self.s0.base:
            raise ValueError("lambda0 and s0 must share a denominator base")
        lo, hi = self.domain_hint
        for f in (self.lambda0, self.s0):
            if f.power:
                inner = [r for r in poly_real_roots(f.base) if lo < r < hi]
                if inner:
                    raise ValueError(f"domain_hint {self.domain_hint} contains poles {inner}")

    @property
    def mode(self) -> str:
        return self.lambda0.mode

    def contains(self, x0) -> bool:
        lo, hi = self.domain_hint
        return lo < x0 < hi


@dataclass(frozen=True)
class AimTrace:
    problem: AimProblem
    pairs: tuple  # ((lambda_n, s_n), ...)
    deltas: tuple  # delta_n as RatFunc, n >= 1

    @property
    def max_iter(self) -> int:
        return len(self.pairs) - 1

    @property
    def delta_numerators(self) -> tuple:
        return tuple(d.num for d in self.deltas)

    def delta(self, n: int) -> RatFunc:
        if not 1 <= n <= self.max_iter:
            raise IndexError(f"delta_{n} not in trace (1..{self.max_iter})")
        return self.deltas[n - 1]


@dataclass(frozen=True)
class RootReport:
    roots: list
    n_iter: int
    x0: object
    stability: float = 0.0
    certificates: list = field(default_factory=list)
    probe_roots: dict = field(default_factory=dict)
    probe_errors: dict = field(default_factory=dict)
    count_mismatch: bool = False


def aim_step(prev: tuple, problem: AimProblem) -> tuple:
    """One application of the lambda/s recurrences."""
    lam, s = prev
    lam_next = lam.derive() + s + problem.lambda0 * lam
    s_next = s.derive() + problem.s0 * lam
    return lam_next, s_next


def run_iterations(problem: AimProblem, max_iter: int) -> AimTrace:
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    if max_iter > MAX_ITERATIONS:
        raise IterationCapError(
            f"max_iter={max_iter} exceeds the cap of {MAX_ITERATIONS}; degrees grow "
            "with every step, so use float mode and fewer iterations"
        )
    pairs = [(problem.lambda0, problem.s0)]
    deltas = []
    for _ in range(max_iter):
        pairs.append(aim_step(pairs[-1], problem))
        (lam_p, s_p), (lam_n, s_n) = pairs[-2], pairs[-1]
        deltas.append(s_n * lam_p - lam_n * s_p)
    return AimTrace(problem, tuple(pairs), tuple(deltas))


def _as_point(x0, mode):
    if mode == EXACT:
        return to_scalar(x0, EXACT)
    return _check_scalar(float(x0), mode)


def quantization_roots(trace: AimTrace, x0, n_iter: int | None = None,
                       interval: tuple | None = None) -> RootReport:
    """Real eigen-parameter roots of ``delta_{n_iter}`` evaluated at ``x0``.

    Each root carries a certificate ``|delta(x0; root)| / (1 + max|coeff|)``.
    """
    n_iter = trace.max_iter if n_iter is None else n_iter
    delta = trace.delta(n_iter)
    x0 = _as_point(x0, trace.problem.mode)
    if delta.power and delta.base(x0) == 0:
        raise PoleError(x0)
    if not trace.problem.contains(x0):
        raise ValueError(f"x0={x0} outside domain {trace.problem.domain_hint}")
    poly = delta.num.eval_x(x0)
    if poly.is_zero():
        raise DegenerateEvaluationError(
            f"delta_{n_iter} vanishes identically at x0={x0}; retry with a different x0"
        )
    try:
        roots = poly_real_roots(poly, interval)
    except ZeroPolynomialError as exc:  # pragma: no cover - guarded above
        raise DegenerateEvaluationError(str(exc)) from exc
    scale = 1.0 + max(abs(float(c)) for c in poly.coeffs)
    fpoly = poly.to_float()
    certs = [abs(float(poly(r)) if poly.mode == EXACT and not isinstance(r, float)
                 else fpoly(float(r))) / scale for r in roots]
    return RootReport(roots=roots, n_iter=n_iter, x0=x0, certificates=certs)


def _pair_drift(ref: list, other: list) -> float:
    k = min(len(ref), len(other))
    if k == 0:
        return 0.0
    cand = [float(v) for v in other]
    return max(min(abs(float(r) - c) for c in cand) for r in ref[:k])


def root_stability(problem: AimProblem, n_iter: int, probes, interval: tuple | None = None,
                   trace: AimTrace | None = None) -> RootReport:
    """Run :func:`quantization_roots` at several ``probes`` and report the drift.

    Roots are reported from the first probe that evaluates cleanly. A probe
    that raises (pole, degenerate point) is recorded in ``probe_errors`` and
    skipped. Differing root counts set ``count_mismatch``; only the common
    prefix of the sorted lists is paired.
    """
    probes = list(probes)
    if len(probes) < 2:
        raise ValueError("root_stability needs at least two probes")
    if trace is None or trace.max_iter < n_iter:
        trace = run_iterations(problem, n_iter)
    reports, errors = [], {}
    for x0 in probes:
        try:
            reports.append((x0, quantization_roots(trace, x0, n_iter, interval)))
        except (PoleError, DegenerateEvaluationError, ValueError) as exc:
            errors[x0] = f"{type(exc).__name__}: {exc}"
    if not reports:
        raise ValueError(f"no probe evaluated cleanly: {errors}")
    ref = reports[0][1]
    drift = max((_pair_drift(ref.roots, r.roots) for _, r in reports[1:]), default=0.0)
    if math.isnan(drift):
        drift = math.inf
    return RootReport(
        roots=ref.roots,
        n_iter=n_iter,
        x0=ref.x0,
        stability=drift,
        certificates=ref.certificates,
        probe_roots={x0: r.roots for x0, r in reports},
        probe_errors=errors,
        count_mismatch=len({len(r.roots) for _, r in reports}) > 1,
    )


def recurrence_check_point(trace: AimTrace, n: int, x0: float, p0: float,
                           h: float = 1e-6) -> tuple[float, float, float, float]:
    """Stored vs scalar-recurrence values of ``(lambda_n, s_n)`` at one point.

    The derivatives of ``lambda_{n-1}`` and ``s_{n-1}`` on the scalar side
    come from central differences, so agreement is finite-difference limited.
    """
    prob = trace.problem
    f = trace.pairs[n - 1]
    lam_f, s_f = f[0].to_float(), f[1].to_float()
    l0, s0 = prob.lambda0.to_float(), prob.s0.to_float()
    dl = (lam_f(x0 + h, p0) - lam_f(x0 - h, p0)) / (2 * h)
    ds = (s_f(x0 + h, p0) - s_f(x0 - h, p0)) / (2 * h)
    lam_prev, s_prev = lam_f(x0, p0), s_f(x0, p0)
    lam_rec = dl + s_prev + l0(x0, p0) * lam_prev
    s_rec = ds + s0(x0, p0) * lam_prev
    lam_n, s_n = trace.pairs[n][0].to_float(), trace.pairs[n][1].to_float()
    return lam_n(x0, p0), lam_rec, s_n(x0, p0), s_rec

