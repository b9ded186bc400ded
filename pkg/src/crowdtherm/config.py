"""Key=value run configuration: parsing, defaults, canonical serialization.

The format is one ``key = value`` pair per line; ``#`` starts a comment and
blank lines are ignored.  Unknown keys are rejected by name, missing keys take
the documented defaults, and a parsed configuration must pass validation.
The particle weight defaults to 1/n so the total mass is 1 unless
``mass_weight`` is given explicitly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .model import ModelParams, MorseParams, SimConfig, Vec2, validate

__all__ = [
    "ConfigError",
    "DEFAULTS",
    "parse_config",
    "parse_pairs",
    "build",
    "config_text",
    "RunMetadata",
    "metadata_text",
]

_FLOAT_KEYS = ("C_a", "C_r", "l_a", "l_r", "sigma", "v_d_x", "v_d_y", "mass_weight", "dt", "t_final", "d_floor")
_INT_KEYS = ("n", "record_stride", "seed")
KEYS = _FLOAT_KEYS + _INT_KEYS

DEFAULTS: dict[str, float | int] = {
    "C_a": 1.0,
    "C_r": 2.0,
    "l_a": 2.0,
    "l_r": 0.5,
    "sigma": 0.5,
    "v_d_x": 1.0,
    "v_d_y": 0.0,
    "n": 25,
    "dt": 1e-3,
    "t_final": 1.0,
    "record_stride": 10,
    "seed": 0,
    "d_floor": 1e-4,
    # mass_weight defaults to 1/n, resolved in build()
}


class ConfigError(ValueError):
    """Malformed configuration text or violated parameter constraints."""

    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


def parse_pairs(text: str) -> dict[str, float | int]:
    """Parse raw key=value text into a typed mapping, rejecting junk by name."""
    values: dict[str, float | int] = {}
    problems: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            problems.append(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
            continue
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in KEYS:
            problems.append(f"line {lineno}: unknown key {key!r}")
            continue
        if key in values:
            problems.append(f"line {lineno}: duplicate key {key!r}")
            continue
        try:
            parsed = int(value) if key in _INT_KEYS else float(value)
        except ValueError:
            kind = "an integer" if key in _INT_KEYS else "a number"
            problems.append(f"line {lineno}: {key} must be {kind}, got {value!r}")
            continue
        if key in _FLOAT_KEYS and not math.isfinite(parsed):
            problems.append(f"line {lineno}: {key} must be finite, got {value!r}")
            continue
        values[key] = parsed
    if problems:
        raise ConfigError(problems)
    return values


def build(values: dict[str, float | int]) -> tuple[ModelParams, SimConfig]:
    """Materialize a (params, config) pair from a partial key mapping."""
    get = lambda k: values.get(k, DEFAULTS[k])
    n = int(get("n"))
    mass = float(values.get("mass_weight", 1.0 / n if n > 0 else 1.0))
    params = ModelParams(
        morse=MorseParams(
            C_a=float(get("C_a")),
            C_r=float(get("C_r")),
            l_a=float(get("l_a")),
            l_r=float(get("l_r")),
        ),
        sigma=float(get("sigma")),
        v_d=Vec2(float(get("v_d_x")), float(get("v_d_y"))),
        mass_weight=mass,
    )
    config = SimConfig(
        n_particles=n,
        dt=float(get("dt")),
        t_final=float(get("t_final")),
        record_stride=int(get("record_stride")),
        seed=int(get("seed")),
        d_floor=float(get("d_floor")),
    )
    return params, config


def parse_config(text: str) -> tuple[ModelParams, SimConfig]:
    """Parse configuration text; the result is guaranteed to pass validation."""
    params, config = build(parse_pairs(text))
    violations = validate(params, config)
    if violations:
        raise ConfigError([f"constraint violated: {v}" for v in violations])
    return params, config


def config_text(params: ModelParams, config: SimConfig) -> str:
    """Canonical key=value rendering; parse_config inverts it exactly."""
    m = params.morse
    pairs = [
        ("C_a", m.C_a),
        ("C_r", m.C_r),
        ("l_a", m.l_a),
        ("l_r", m.l_r),
        ("sigma", params.sigma),
        ("v_d_x", params.v_d.x),
        ("v_d_y", params.v_d.y),
        ("mass_weight", params.mass_weight),
        ("n", config.n_particles),
        ("dt", config.dt),
        ("t_final", config.t_final),
        ("record_stride", config.record_stride),
        ("seed", config.seed),
        ("d_floor", config.d_floor),
    ]
    return "".join(f"{k} = {v!r}\n" for k, v in pairs)


@dataclass(frozen=True)
class RunMetadata:
    """Everything needed to reproduce a run bit-for-bit on one platform."""

    params: ModelParams
    config: SimConfig
    scheme: str
    generator: str
    version: str
    duration_s: float
    n_runs: int | None = None  # None for single-run outputs


def metadata_text(meta: RunMetadata) -> str:
    """Render metadata as config text plus commented reproducibility notes.

    The result is itself a parseable configuration (comments are ignored), so
    feeding the metadata file back through the CLI reruns the experiment.
    """
    lines = [config_text(meta.params, meta.config)]
    lines.append(f"# scheme = {meta.scheme}\n")
    lines.append(f"# rng = {meta.generator}\n")
    lines.append(f"# version = {meta.version}\n")
    lines.append(f"# duration_s = {meta.duration_s:.3f}\n")
    if meta.n_runs is not None:
        lines.append(f"# n_runs = {meta.n_runs}\n")
        first = meta.config.seed
        lines.append(f"# run_seeds = {first}..{(first + meta.n_runs - 1) % 2**64}\n")
    return "".join(lines)
