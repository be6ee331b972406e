"""``kgmakarov`` command-line interface.

Subcommands::

    spectrum       bound-state energies for every (N, n, m) in range
    wavefunction   sampled R, Theta, Phi and psi for one state (CSV)
    aim-trace      per-iteration quantization roots and root stability (JSON)
    verify         run the verification matrix
    sweep          energies of tracked states along one parameter axis (CSV)

Exit codes: 0 success, 1 failed verification, 2 invalid configuration,
3 unbound state, 4 iteration cap refused.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import replace
from datetime import datetime, timezone
from fractions import Fraction

import numpy as np

from . import __version__, aim, model, wavefun
from .config import ConfigError, RunConfig, build_config

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_UNBOUND = 3
EXIT_ITERATION_CAP = 4

SWEEP_AXES = ("alpha", "beta", "gamma", "M")
MAX_SWEEP_SAMPLES = 10_000


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# output helpers


def _num(v: float) -> str:
    return "%.17g" % v


def dump_json(payload: dict) -> str:
    # floats go through repr, the shortest string that round-trips exactly
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n"


def dump_csv(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_num(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def emit(text: str, cfg: RunConfig, command: str, stdout) -> None:
    """Write ``text`` to ``cfg.out`` (plus a metadata sidecar) or to stdout."""
    if cfg.out is None:
        stdout.write(text)
        return
    with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    meta = {
        "command": command,
        "generated": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "output": cfg.out,
        "version": __version__,
    }
    with open(cfg.out + ".meta.json", "w", encoding="utf-8") as fh:
        fh.write(dump_json(meta))


def _exact_str(v) -> str | None:
    return str(v) if isinstance(v, Fraction) else None


# ---------------------------------------------------------------------------
# commands


def _spectrum_entry(cfg: RunConfig, qn: model.QuantumNumbers) -> model.SpectrumEntry:
    if cfg.method == "aim":
        return model.aim_spectrum_entry(cfg.params, qn)
    return model.self_consistent_spectrum(cfg.params, qn)


def compute_spectrum(cfg: RunConfig) -> tuple[list[model.SpectrumEntry], list[dict]]:
    entries, errors = [], []
    for N, n, m in cfg.states():
        qn = model.QuantumNumbers(N, n, m)
        try:
            entries.append(_spectrum_entry(cfg, qn))
        except (model.UnboundChannelError, model.NoBoundStateError) as exc:
            errors.append({"N": N, "n": n, "m": m, "error": type(exc).__name__,
                           "message": str(exc)})
    entries.sort(key=lambda e: (e.energy, e.qn))
    return entries, errors


def cmd_spectrum(cfg: RunConfig, stdout=sys.stdout) -> int:
    entries, errors = compute_spectrum(cfg)
    if cfg.format == "csv":
        header = ["N", "n", "m", "E", "ell_eff", "residual", "source"]
        text = dump_csv(header, [[e.qn.N, e.qn.n, e.qn.m, e.energy, e.ell_eff, e.residual, e.source]
                                 for e in entries])
    else:
        payload = {"params": cfg.params.as_dict(), "config": cfg.as_dict(),
                   "entries": [e.as_dict() for e in entries]}
        if errors:
            payload["errors"] = errors
        text = dump_json(payload)
    emit(text, cfg, "spectrum", stdout)
    return EXIT_UNBOUND if errors else EXIT_OK


def wavefunction_rows(cfg: RunConfig, state: tuple[int, int, int], r_points: int = 201,
                      theta_points: int = 181, phi_points: int = 73,
                      r_max: float | None = None) -> list[list]:
    """Long-format samples: one block per varying coordinate.

    The fixed coordinates of each block sit at ``r = 1/kappa``,
    ``theta = pi/2`` and ``phi = 0``.
    """
    N, n, m = state
    p = cfg.params
    entry = _spectrum_entry(cfg, model.QuantumNumbers(N, n, m))
    rw = wavefun.radial_wave(p, entry.energy, entry.ell_eff, N)
    ch = model.AngularChannel.from_energy(p, entry.energy, m)
    aw = wavefun.angular_wave(m, ch.beta_p, ch.gamma_p, n)
    if r_max is None:
        r_max = (entry.ell_eff + rw.n_prime + 10 * math.sqrt(rw.n_prime)) / rw.kappa
    r0, th0, ph0 = 1.0 / rw.kappa, math.pi / 2, 0.0
    blocks = [
        ("r", np.linspace(0.0, r_max, r_points), np.full(r_points, th0), np.full(r_points, ph0)),
        ("theta", np.full(theta_points, r0), np.linspace(0.0, math.pi, theta_points),
         np.full(theta_points, ph0)),
        ("phi", np.full(phi_points, r0), np.full(phi_points, th0),
         np.linspace(0.0, 2 * math.pi, phi_points)),
    ]
    rows = []
    for name, r, th, ph in blocks:
        R, T = rw(r), aw(th)
        Phi = wavefun.azimuthal_wave(m, ph)
        psi = [s.value for s in wavefun.assemble_psi(rw, aw, m, np.column_stack([r, th, ph]))]
        for i in range(len(r)):
            rows.append([name, float(r[i]), float(R[i]), float(th[i]), float(T[i]), float(ph[i]),
                         float(Phi[i].real), float(Phi[i].imag),
                         float(psi[i].real), float(psi[i].imag)])
    return rows


WAVE_HEADER = ["block", "r", "R", "theta", "Theta", "phi", "phi_re", "phi_im", "psi_re", "psi_im"]


def cmd_wavefunction(cfg: RunConfig, state, stdout=sys.stdout, **grid) -> int:
    try:
        rows = wavefunction_rows(cfg, state, **grid)
    except (model.UnboundChannelError, model.NoBoundStateError) as exc:
        raise CliError(EXIT_UNBOUND, f"state {state} is not bound: {exc}") from exc
    emit(dump_csv(WAVE_HEADER, rows), cfg, "wavefunction", stdout)
    return EXIT_OK


def aim_trace_payload(cfg: RunConfig, channel: str, ell=None, a=None, b=None) -> dict:
    if channel == "radial":
        ell = 0.0 if ell is None else ell
        prob = model.radial_aim_problem(ell, cfg.mode)
        probes = [cfg.x0, 2 * cfg.x0, cfg.x0 / 2]
        chan = {"channel": "radial", "ell": ell, "parameter": "nu"}
    else:
        if a is None or b is None:
            raise CliError(EXIT_CONFIG, "angular trace needs --a and --b")
        prob = model.angular_aim_problem(a, b, cfg.mode)
        probes = [Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)]
        chan = {"channel": "angular", "a": a, "b": b, "parameter": "t"}
    if prob.mode == "exact":
        probes = [v if isinstance(v, Fraction) else Fraction(repr(v)) for v in probes]
    else:
        probes = [float(v) for v in probes]
    try:
        trace = aim.run_iterations(prob, cfg.iters)
    except aim.IterationCapError as exc:
        raise CliError(EXIT_ITERATION_CAP, str(exc)) from exc
    iterations = []
    for k in range(1, cfg.iters + 1):
        rep = aim.quantization_roots(trace, probes[0], k)
        iterations.append({
            "n": k,
            "degree": trace.delta(k).num.eval_x(rep.x0).degree,
            "roots": [float(r) for r in rep.roots],
            "roots_exact": [_exact_str(r) for r in rep.roots],
            "certificates": [float(c) for c in rep.certificates],
        })
    stab = aim.root_stability(prob, cfg.iters, probes, trace=trace)
    return {
        "config": cfg.as_dict(),
        "problem": chan,
        "x0": float(probes[0]),
        "iterations": iterations,
        "stability": {
            "probes": [float(v) for v in probes],
            "max_drift": stab.stability,
            "count_mismatch": stab.count_mismatch,
            "probe_errors": {str(float(k)): v for k, v in stab.probe_errors.items()},
        },
    }


def cmd_aim_trace(cfg: RunConfig, channel: str, stdout=sys.stdout, **kw) -> int:
    emit(dump_json(aim_trace_payload(cfg, channel, **kw)), cfg, "aim-trace", stdout)
    return EXIT_OK


def cmd_verify(cfg: RunConfig, stdout=sys.stdout) -> int:
    from .verify import format_table, run_checks

    checks = run_checks(cfg)
    failed = any(c.status == "fail" for c in checks)
    stdout.write(format_table(checks) + "\n")
    if cfg.out is not None:
        payload = {"config": cfg.as_dict(), "passed": not failed,
                   "checks": [c.as_dict() for c in checks]}
        emit(dump_json(payload), cfg, "verify", io.StringIO())
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def sweep_rows(cfg: RunConfig, axis: str, start: float, stop: float, samples: int):
    values = np.linspace(start, stop, samples) if samples > 1 else np.array([start])
    states = cfg.states()
    rows, unbound = [], False
    for v in values:
        sub = replace(cfg, **{axis: float(v)})
        row = [float(v)]
        for N, n, m in states:
            try:
                row.append(_spectrum_entry(sub, model.QuantumNumbers(N, n, m)).energy)
            except (model.UnboundChannelError, model.NoBoundStateError):
                row.append(float("nan"))
                unbound = True
        rows.append(row)
    header = [axis] + [f"E_{N}_{n}_{m}" for N, n, m in states]
    return header, rows, unbound


def cmd_sweep(cfg: RunConfig, axis: str, start: float, stop: float, samples: int,
              stdout=sys.stdout) -> int:
    problems = []
    if axis not in SWEEP_AXES:
        problems.append(f"sweep axis must be one of {SWEEP_AXES} (got {axis!r})")
    if not 1 <= samples <= MAX_SWEEP_SAMPLES:
        problems.append(f"samples must be in 1..{MAX_SWEEP_SAMPLES} (got {samples})")
    if axis in SWEEP_AXES:
        for v in (start, stop):
            d = cfg.params.as_dict()
            d[axis] = v
            problems += [f"sweep endpoint: {p}" for p in model.param_violations(**d)]
    if problems:
        raise ConfigError(problems)
    header, rows, unbound = sweep_rows(cfg, axis, start, stop, samples)
    emit(dump_csv(header, rows), cfg, "sweep", stdout)
    return EXIT_UNBOUND if unbound else EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _state(text: str) -> tuple[int, int, int]:
    vals = _int_list(text)
    if len(vals) != 3:
        raise argparse.ArgumentTypeError(f"state must be N,n,m (got {text!r})")
    return tuple(vals)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit 2 too; keep the message format ours
        raise CliError(EXIT_CONFIG, message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("run configuration")
    g.add_argument("--config", help="JSON config file (flags override its keys)")
    g.add_argument("--alpha", type=float)
    g.add_argument("--beta", type=float)
    g.add_argument("--gamma", type=float)
    g.add_argument("--mass", dest="M", type=float)
    g.add_argument("--Nmax", dest="N_max", type=int, help="largest radial quantum number")
    g.add_argument("--nmax", dest="n_max", type=int, help="largest polar quantum number")
    g.add_argument("--m", type=_int_list, help="comma-separated magnetic quantum numbers")
    g.add_argument("--mode", help="exact | float arithmetic for the iteration method")
    g.add_argument("--iters", type=int, help="iteration count")
    g.add_argument("--x0", type=float, help="evaluation point of the termination condition")
    g.add_argument("--method", help="closed_form | aim energy solver")
    g.add_argument("--format", help="json | csv")
    g.add_argument("--out", help="output file (default stdout)")

    p = _Parser(prog="kgmakarov", description="Spin-0 bound states in a Coulomb plus ring-shaped potential")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("spectrum", parents=[common], help="bound-state energies")

    w = sub.add_parser("wavefunction", parents=[common], help="sample one eigenfunction (CSV)")
    w.add_argument("--state", type=_state, required=True, help="N,n,m")
    w.add_argument("--r-points", type=int, default=201)
    w.add_argument("--r-max", type=float, default=None)
    w.add_argument("--theta-points", type=int, default=181)
    w.add_argument("--phi-points", type=int, default=73)

    t = sub.add_parser("aim-trace", parents=[common], help="per-iteration roots (JSON)")
    t.add_argument("--channel", choices=["radial", "angular"], default="radial")
    t.add_argument("--ell", type=float, default=None, help="radial: orbital parameter")
    t.add_argument("--a", type=float, default=None, help="angular: exponent at y = 0")
    t.add_argument("--b", type=float, default=None, help="angular: exponent at y = 1")

    v = sub.add_parser("verify", parents=[common], help="run the verification matrix")
    v.add_argument("--tolerance", type=float, default=None, help="override every tolerance")
    v.add_argument("--no-oracle", dest="oracle", action="store_const", const=False, default=None,
                   help="skip the finite-difference checks")

    s = sub.add_parser("sweep", parents=[common], help="energies along a parameter axis (CSV)")
    s.add_argument("--vary", required=True, help="alpha | beta | gamma | M")
    s.add_argument("--start", type=float, required=True)
    s.add_argument("--stop", type=float, required=True)
    s.add_argument("--samples", type=int, default=11)
    return p


CONFIG_FLAGS = ("alpha", "beta", "gamma", "M", "N_max", "n_max", "m", "mode", "iters", "x0",
                "method", "format", "out", "tolerance", "oracle")


def run(argv=None, stdout=sys.stdout, stderr=sys.stderr) -> int:
    try:
        args = build_parser().parse_args(argv)
        flags = {k: getattr(args, k, None) for k in CONFIG_FLAGS}
        cfg = build_config(flags, args.config)
        if args.command == "spectrum":
            return cmd_spectrum(cfg, stdout)
        if args.command == "wavefunction":
            return cmd_wavefunction(cfg, args.state, stdout, r_points=args.r_points,
                                    theta_points=args.theta_points, phi_points=args.phi_points,
                                    r_max=args.r_max)
        if args.command == "aim-trace":
            return cmd_aim_trace(cfg, args.channel, stdout, ell=args.ell, a=args.a, b=args.b)
        if args.command == "verify":
            return cmd_verify(cfg, stdout)
        return cmd_sweep(cfg, args.vary, args.start, args.stop, args.samples, stdout)
    except ConfigError as exc:
        stderr.write("configuration error:\n" + "".join(f"  - {p}\n" for p in exc.problems))
        return EXIT_CONFIG
    except CliError as exc:
        stderr.write(f"error: {exc}\n")
        return exc.code
    except model.DomainError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
