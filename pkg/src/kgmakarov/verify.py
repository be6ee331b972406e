"""Verification matrix run by ``kgmakarov verify``.

Each check compares two independent routes (iteration method vs closed form,
closed form vs finite differences, printed normalisation vs quadrature) and
records the observed discrepancy against its tolerance.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import aim, model, oracle, wavefun
from .config import RunConfig

__all__ = ["Check", "TOLERANCES", "run_checks", "format_table"]

# default tolerance per check group
TOLERANCES = {
    "aim_radial": 1e-8,
    "aim_angular": 1e-8,
    "aim_spectrum": 1e-8,
    "residual": 1e-12,  # residual / M
    "aim_stability": 1e-7,
    "oracle_radial": 1e-5,
    "oracle_angular": 1e-4,
    "oracle_order": 0.5,  # |ratio - 4|
    "oracle_self_consistent": 1e-5,
    "norm_unit": 1e-8,
    "norm_radial_ratio2": 1e-6,
    "norm_radial_spread": 1e-6,
    "norm_angular_spread": 1e-6,
    "orthogonality": 1e-6,
}

RADIAL_ELLS = (0.0, 0.5, 1.0, math.sqrt(2.0))
FD_STEP = 1e-3
FD_CELLS = 2000


@dataclass(frozen=True)
class Check:
    group: str
    name: str
    value: float | None
    tolerance: float
    status: str  # "pass" | "fail" | "skipped"
    detail: str = ""

    @property
    def margin(self) -> float | None:
        return None if self.value is None else self.tolerance - self.value

    def as_dict(self) -> dict:
        return {"group": self.group, "name": self.name, "value": self.value,
                "tolerance": self.tolerance, "margin": self.margin,
                "status": self.status, "detail": self.detail}


class _Recorder:
    def __init__(self, override: float | None):
        self.override = override
        self.checks: list[Check] = []

    def tol(self, group: str) -> float:
        if self.override is not None:
            return self.override
        return TOLERANCES[group]

    def add(self, group: str, name: str, value: float, detail: str = ""):
        tol = self.tol(group)
        ok = value is not None and math.isfinite(value) and value <= tol
        self.checks.append(Check(group, name, float(value), tol, "pass" if ok else "fail", detail))

    def fail(self, group: str, name: str, detail: str):
        self.checks.append(Check(group, name, None, self.tol(group), "fail", detail))

    def skip(self, group: str, name: str, detail: str):
        self.checks.append(Check(group, name, None, self.tol(group), "skipped", detail))


def _entries(cfg: RunConfig, rec: _Recorder) -> dict:
    out = {}
    for N, n, m in cfg.states():
        qn = model.QuantumNumbers(N, n, m)
        try:
            out[(N, n, m)] = model.self_consistent_spectrum(cfg.params, qn)
        except (model.UnboundChannelError, model.NoBoundStateError) as exc:
            rec.fail("residual", f"state {N},{n},{m}", f"{type(exc).__name__}: {exc}")
    return out


def _aim_checks(cfg: RunConfig, rec: _Recorder, entries: dict):
    p = cfg.params
    n_iter = max(cfg.iters, cfg.N_max + 2, cfg.n_max + 2)
    for ell in RADIAL_ELLS:
        for N in range(cfg.N_max + 1):
            nu = model.aim_radial_nu(ell, N, n_iter, mode=cfg.mode)
            E_aim = model.energy_from_nu(p.M, p.alpha, nu)
            E_cf = model.radial_energy_closed_form(p.M, p.alpha, ell, N)
            rec.add("aim_radial", f"l={ell:.6g} N={N}", abs(E_aim - E_cf))
    for m in cfg.m:
        # polar channel at the pure-Coulomb ground energy
        E0 = model.radial_energy_closed_form(p.M, p.alpha, abs(m), 0)
        try:
            ch = model.AngularChannel.from_energy(p, E0, m)
        except model.UnboundChannelError as exc:
            rec.fail("aim_angular", f"m={m}", str(exc))
            continue
        for n in range(cfg.n_max + 1):
            ell = model.aim_angular_ell(ch.a, ch.b, n, n_iter, mode=cfg.mode)
            rec.add("aim_angular", f"m={m} n={n}",
                    abs(ell - model.effective_ell(m, ch.beta_p, ch.gamma_p, n)))
    for key, entry in entries.items():
        e_aim = model.aim_spectrum_entry(p, entry.qn)
        rec.add("aim_spectrum", "state {},{},{}".format(*key), abs(e_aim.energy - entry.energy))
        rec.add("residual", "state {},{},{}".format(*key), entry.residual / p.M)

    probes = [cfg.x0, 2 * cfg.x0, cfg.x0 / 2]
    if cfg.mode == "exact":
        probes = [Fraction(repr(v)) for v in probes]
    prob = model.radial_aim_problem(math.sqrt(2.0), cfg.mode)
    rep = aim.root_stability(prob, cfg.iters, probes)
    rec.add("aim_stability", f"radial l=sqrt2 iters={cfg.iters}", rep.stability)
    if entries:
        first = min(entries)
        ch = model.AngularChannel.from_energy(p, entries[first].energy, first[2])
        yprobes = [Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)]
        prob = model.angular_aim_problem(ch.a, ch.b, cfg.mode)
        rep = aim.root_stability(prob, cfg.iters, yprobes)
        rec.add("aim_stability", f"polar m={first[2]} iters={cfg.iters}", rep.stability)


def _oracle_checks(cfg: RunConfig, rec: _Recorder, entries: dict):
    p = cfg.params
    groups = ("oracle_radial", "oracle_angular", "oracle_order", "oracle_self_consistent")
    if not cfg.oracle:
        for g in groups:
            rec.skip(g, "all", "oracle disabled")
        return
    for m in cfg.m:
        ground = entries.get((0, 0, m))
        if ground is None:
            rec.skip("oracle_radial", f"m={m}", "no ground state")
            continue
        E = ground.energy
        s = (E + p.M) * p.alpha / 2
        ell = ground.ell_eff
        res = oracle.radial_fd_eigen(ell, s, oracle.radial_box(ell, s, cfg.N_max, FD_STEP),
                                     cfg.N_max + 1)
        for N in range(cfg.N_max + 1):
            exact = -(s**2) / (ell + 1 + N) ** 2
            rec.add("oracle_radial", f"m={m} l={ell:.6g} N={N}", abs(res.eigenvalues[N] - exact))

        ch = model.AngularChannel.from_energy(p, E, m)
        edge = m * m + ch.beta_p - abs(ch.gamma_p)
        if 0 < edge < 0.25:
            rec.skip("oracle_angular", f"m={m}", f"endpoint exponent {edge:.3g} < 1/4 converges slowly")
        else:
            lam = oracle.angular_fd_eigen(m, ch.beta_p, ch.gamma_p, oracle.angular_grid(FD_CELLS),
                                          cfg.n_max + 1)
            for n in range(cfg.n_max + 1):
                le = model.effective_ell(m, ch.beta_p, ch.gamma_p, n)
                rec.add("oracle_angular", f"m={m} n={n}", abs(lam.eigenvalues[n] - le * (le + 1)))

    if entries:
        N0, n0, m0 = min(entries, key=lambda k: (k[0], k[1], abs(k[2])))
        ground = entries[(N0, n0, m0)]
        s = (ground.energy + p.M) * p.alpha / 2
        ell = ground.ell_eff
        r = oracle.convergence_ratio(oracle.radial_fd_eigen, oracle.radial_box(ell, s, 0, 4e-3), 1,
                                     ell=ell, s=s)
        rec.add("oracle_order", f"radial l={ell:.6g}", abs(r[0] - 4.0))
        ch = model.AngularChannel.from_energy(p, ground.energy, m0)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", oracle.SlowConvergenceWarning)
            r = oracle.convergence_ratio(oracle.angular_fd_eigen, oracle.angular_grid(250), 1,
                                         m=m0, beta_p=ch.beta_p, gamma_p=ch.gamma_p)
        rec.add("oracle_order", f"polar m={m0}", abs(r[0] - 4.0))
        E_or = oracle.self_consistent_oracle(p, ground.qn)
        rec.add("oracle_self_consistent", f"state {N0},{n0},{m0}", abs(E_or - ground.energy))


def _norm_checks(cfg: RunConfig, rec: _Recorder, entries: dict):
    p = cfg.params
    radial_ratios, angular_ratios, unit = [], [], 0.0
    for (N, n, m), e in sorted(entries.items()):
        rw = wavefun.radial_wave(p, e.energy, e.ell_eff, N)
        radial_ratios.append(rw.norm_analytic / rw.norm_numeric)
        ch = model.AngularChannel.from_energy(p, e.energy, m)
        aw = wavefun.angular_wave(m, ch.beta_p, ch.gamma_p, n)
        angular_ratios.append(aw.norm_analytic / aw.norm_numeric)
        r_max = 4 * (e.ell_eff + rw.n_prime + 10 * math.sqrt(rw.n_prime)) / rw.kappa
        norm = oracle.quadrature(lambda r: rw(r) ** 2, 0.0, r_max, panels=16)
        unit = max(unit, abs(norm - 1.0))
    if not entries:
        rec.skip("norm_unit", "all", "no bound states")
        return
    rec.add("norm_unit", f"{len(entries)} radial states", unit)
    rr = np.array(radial_ratios)
    rec.add("norm_radial_ratio2", f"{len(rr)} states", float(np.max(np.abs(rr**2 - 2.0))))
    rec.add("norm_radial_spread", f"{len(rr)} states", float(np.ptp(rr)))
    ar = np.array(angular_ratios)
    rec.add("norm_angular_spread", f"{len(ar)} states, ratio {ar[0]:.15g}", float(np.ptp(ar)))

    ell = next(iter(entries.values())).ell_eff
    G = wavefun.radial_gram_matrix(ell, max(cfg.N_max, 1))
    rec.add("orthogonality", f"radial l={ell:.6g}", float(np.max(np.abs(G - np.eye(len(G))))))
    key = min(entries)
    ch = model.AngularChannel.from_energy(p, entries[key].energy, key[2])
    G = wavefun.angular_gram_matrix(key[2], ch.beta_p, ch.gamma_p, max(cfg.n_max, 1))
    rec.add("orthogonality", f"polar m={key[2]}", float(np.max(np.abs(G - np.eye(len(G))))))


def run_checks(cfg: RunConfig) -> list[Check]:
    """Run the full matrix for ``cfg``; ``cfg.tolerance`` overrides every tolerance."""
    rec = _Recorder(cfg.tolerance)
    entries = _entries(cfg, rec)
    _aim_checks(cfg, rec, entries)
    _oracle_checks(cfg, rec, entries)
    _norm_checks(cfg, rec, entries)
    return rec.checks


def _fmt(v) -> str:
    return "-" if v is None else f"{v:.3e}"


def format_table(checks: list[Check]) -> str:
    rows = [("status", "group", "check", "value", "tolerance", "margin")]
    rows += [(c.status.upper(), c.group, c.name, _fmt(c.value), _fmt(c.tolerance), _fmt(c.margin))
             for c in checks]
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
    n_fail = sum(c.status == "fail" for c in checks)
    n_skip = sum(c.status == "skipped" for c in checks)
    lines.append(f"{len(checks) - n_fail - n_skip} passed, {n_fail} failed, {n_skip} skipped")
    return "\n".join(lines)
