"""Run configuration for the command-line interface.

Values come from three layers, highest priority first: command-line flags,
a JSON config file, and the shipped defaults (``data/default_config.json``).
The merged configuration is validated as a whole so that every problem is
reported in one go.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields
from importlib import resources

from .model import ModelParams, param_violations

__all__ = ["ConfigError", "RunConfig", "default_values", "load_config_file", "build_config"]

MODES = ("exact", "float")
FORMATS = ("json", "csv")
METHODS = ("closed_form", "aim")


class ConfigError(ValueError):
    """Invalid configuration; ``problems`` lists every violation."""

    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = list(problems)


@dataclass(frozen=True)
class RunConfig:
    alpha: float
    beta: float
    gamma: float
    M: float
    N_max: int
    n_max: int
    m: tuple
    mode: str
    iters: int
    x0: float
    format: str
    method: str
    tolerance: float | None
    oracle: bool
    out: str | None = None
    deterministic: bool = True

    @property
    def params(self) -> ModelParams:
        return ModelParams(self.alpha, self.beta, self.gamma, self.M)

    def states(self) -> list[tuple[int, int, int]]:
        return [(N, n, m) for m in self.m for n in range(self.n_max + 1)
                for N in range(self.N_max + 1)]

    def as_dict(self) -> dict:
        d = asdict(self)
        d["m"] = list(self.m)
        d.pop("out")  # where the data went is not part of the data
        return d


FIELD_NAMES = tuple(f.name for f in fields(RunConfig))


def default_values() -> dict:
    text = resources.files("kgmakarov").joinpath("data/default_config.json").read_text()
    return json.loads(text)


def load_config_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError([f"cannot read config file {path}: {exc.strerror}"]) from exc
    except json.JSONDecodeError as exc:
        raise ConfigError([f"config file {path} is not valid JSON: {exc}"]) from exc
    if not isinstance(data, dict):
        raise ConfigError([f"config file {path} must hold a JSON object"])
    return data


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _is_num(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _violations(d: dict) -> list[str]:
    out = []
    unknown = sorted(set(d) - set(FIELD_NAMES))
    if unknown:
        out.append(f"unknown config keys: {', '.join(unknown)}")
    out += param_violations(d["alpha"], d["beta"], d["gamma"], d["M"])
    for key in ("N_max", "n_max"):
        v = d[key]
        if not _is_int(v):
            out.append(f"{key} must be an integer (got {v!r})")
        elif v < 0:
            out.append(f"{key} must be >= 0: empty quantum-number range (got {v})")
    ms = d["m"]
    if not isinstance(ms, (list, tuple)) or not ms:
        out.append(f"m must be a non-empty list of integers (got {ms!r})")
    elif not all(_is_int(v) for v in ms):
        out.append(f"m entries must be integers (got {ms!r})")
    elif len(set(ms)) != len(ms):
        out.append(f"m entries must be distinct (got {ms!r})")
    if d["mode"] not in MODES:
        out.append(f"mode must be one of {MODES} (got {d['mode']!r})")
    # no upper bound here: the engine refuses over-cap runs with its own exit code
    if not _is_int(d["iters"]) or d["iters"] < 1:
        out.append(f"iters must be an integer >= 1 (got {d['iters']!r})")
    if not _is_num(d["x0"]) or not (math.isfinite(d["x0"]) and d["x0"] > 0):
        out.append(f"x0 must be a finite number > 0 (got {d['x0']!r})")
    if d["format"] not in FORMATS:
        out.append(f"format must be one of {FORMATS} (got {d['format']!r})")
    if d["method"] not in METHODS:
        out.append(f"method must be one of {METHODS} (got {d['method']!r})")
    tol = d["tolerance"]
    if tol is not None and (not _is_num(tol) or not tol > 0):
        out.append(f"tolerance must be > 0 (got {tol!r})")
    if not isinstance(d["oracle"], bool):
        out.append(f"oracle must be true or false (got {d['oracle']!r})")
    if d.get("deterministic", True) is not True:
        out.append("deterministic cannot be switched off")
    return out


def build_config(flags: dict | None = None, config_path: str | None = None) -> RunConfig:
    """Merge defaults, config file and flags (``None`` flag values are unset)."""
    merged = default_values()
    if config_path is not None:
        merged.update(load_config_file(config_path))
    merged.update({k: v for k, v in (flags or {}).items() if v is not None})
    problems = _violations(merged)
    if problems:
        raise ConfigError(problems)
    merged["m"] = tuple(merged["m"])
    merged.setdefault("deterministic", True)
    return RunConfig(**{k: merged.get(k) for k in FIELD_NAMES})
