# data/config_loader.py - flat key=value config files and RunConfig assembly

import os
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from utils.column_mapper import CANONICAL_KEYS, standardize_keys
from utils.validators import ConfigError

COMMANDS = ("evolve", "certify", "gisin", "compare")
FORMATS = ("csv", "json")

DEFAULTS = {
    "flow": "boost",
    "e": "1,0,0",
    "g": "1",
    "degrees": "false",
    "samples": "1000",
    "seed": "7",
    "weighting": "paper-lambda",
    "rk4": "false",
    "steps": "10000",
    "verbose": "false",
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    flow: str
    e: np.ndarray
    g: float
    t: Optional[Tuple[float, ...]]
    phi: Optional[Tuple[float, ...]]
    samples: int
    seed: int
    tol: Optional[float]
    weighting: str
    format: str
    output: Optional[str]
    xi: Optional[np.ndarray] = None
    xi_a: Optional[np.ndarray] = None
    xi_b: Optional[np.ndarray] = None
    lam: Optional[float] = None
    rk4: bool = False
    steps: int = 10000
    ledger: Optional[str] = None
    verbose: bool = False


# ===============================
# FILE LOADING
# ===============================
def load_config_file(path: str) -> Dict[str, str]:
    """
    Read a flat `key = value` file

    Blank lines and `#` comments are skipped; keys are standardized and
    unknown keys rejected.
    """
    if not os.path.exists(path):
        raise ConfigError(f"Config file not found: {path}")

    raw = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            stripped = line.split("#", 1)[0].strip()
            if not stripped:
                continue
            if "=" not in stripped:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value', got '{stripped}'")
            key, value = stripped.split("=", 1)
            raw[key.strip()] = value.strip()

    return standardize_keys(raw)


def merge_sources(flags: Dict[str, str], file_values: Optional[Dict[str, str]] = None) -> Dict[str, str]:
    """Flags override config-file values override defaults"""
    merged = dict(DEFAULTS)
    merged.update(file_values or {})
    merged.update({k: v for k, v in flags.items() if v is not None})
    unknown = set(merged) - set(CANONICAL_KEYS)
    if unknown:
        raise ConfigError(f"Unknown config keys: {', '.join(sorted(unknown))}")
    return merged


# ===============================
# VALUE PARSING
# ===============================
def parse_float(name: str, value: str) -> float:
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"'{name}' must be a number, got '{value}'")
    if not np.isfinite(number):
        raise ConfigError(f"'{name}' must be finite, got '{value}'")
    return number


def parse_int(name: str, value: str) -> int:
    try:
        return int(str(value).strip())
    except ValueError:
        raise ConfigError(f"'{name}' must be an integer, got '{value}'")


def parse_list(name: str, value: str) -> Tuple[float, ...]:
    parts = [p for p in str(value).replace(";", ",").split(",") if p.strip()]
    if not parts:
        raise ConfigError(f"'{name}' must be a non-empty comma-separated list")
    return tuple(parse_float(name, p) for p in parts)


def parse_vector(name: str, value: str) -> np.ndarray:
    values = parse_list(name, value)
    if len(values) != 3:
        raise ConfigError(f"'{name}' must have 3 components, got {len(values)}")
    return np.array(values, dtype=float)


def parse_bool(name: str, value) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"'{name}' must be a boolean, got '{value}'")


# ===============================
# RUN CONFIG
# ===============================
def build_run_config(command: str, merged: Dict[str, str]) -> RunConfig:
    """Typed, validated RunConfig from merged string values"""
    if command not in COMMANDS:
        raise ConfigError(f"Unknown command '{command}'; expected one of {', '.join(COMMANDS)}")

    degrees = parse_bool("degrees", merged["degrees"])
    phi = parse_list("phi", merged["phi"]) if "phi" in merged else None
    if phi is not None and degrees:
        phi = tuple(float(np.deg2rad(x)) for x in phi)

    t = parse_list("t", merged["t"]) if "t" in merged else None
    if t is not None and any(x < 0 for x in t):
        raise ConfigError("'t' values must be ≥ 0")

    g = parse_float("g", merged["g"])
    if g <= 0:
        raise ConfigError(f"'g' must be > 0, got {g}")

    samples = parse_int("samples", merged["samples"])
    if samples < 1:
        raise ConfigError(f"'samples' must be ≥ 1, got {samples}")

    steps = parse_int("steps", merged["steps"])
    if steps < 1:
        raise ConfigError(f"'steps' must be ≥ 1, got {steps}")

    tol = parse_float("tol", merged["tol"]) if "tol" in merged else None
    if tol is not None and tol <= 0:
        raise ConfigError(f"'tol' must be > 0, got {tol}")

    # certify reports are JSON unless csv is asked for
    fmt = str(merged.get("format", "json" if command == "certify" else "csv")).strip().lower()
    if fmt not in FORMATS:
        raise ConfigError(f"'format' must be one of {', '.join(FORMATS)}, got '{fmt}'")

    lam = parse_float("lam", merged["lam"]) if "lam" in merged else None
    if lam is not None and not 0.0 <= lam <= 1.0:
        raise ConfigError(f"'lam' must lie in [0, 1], got {lam}")

    return RunConfig(
        command=command,
        flow=str(merged["flow"]).strip(),
        e=parse_vector("e", merged["e"]),
        g=g,
        t=t,
        phi=phi,
        samples=samples,
        seed=parse_int("seed", merged["seed"]),
        tol=tol,
        weighting=str(merged["weighting"]).strip(),
        format=fmt,
        output=merged.get("output"),
        xi=parse_vector("xi", merged["xi"]) if "xi" in merged else None,
        xi_a=parse_vector("xi_a", merged["xi_a"]) if "xi_a" in merged else None,
        xi_b=parse_vector("xi_b", merged["xi_b"]) if "xi_b" in merged else None,
        lam=lam,
        rk4=parse_bool("rk4", merged["rk4"]),
        steps=steps,
        ledger=merged.get("ledger"),
        verbose=parse_bool("verbose", merged["verbose"]),
    )
