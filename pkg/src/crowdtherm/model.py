"""Domain types and parameter validation for the planar crowd model.

Constructors are permissive about constraint violations; :func:`validate` is
the single gate that reports every broken constraint by name.  Constructors
only reject data that cannot be represented at all (non-finite vectors,
malformed position arrays).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Vec2",
    "MorseParams",
    "ModelParams",
    "ParticleState",
    "SimConfig",
    "validate",
    "total_mass",
]

MAX_SEED = 2**64 - 1


@dataclass(frozen=True)
class Vec2:
    """Planar vector with finite components."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"Vec2 components must be finite, got ({self.x}, {self.y})")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=float)

    @classmethod
    def from_array(cls, a) -> "Vec2":
        return cls(float(a[0]), float(a[1]))

    def norm(self) -> float:
        return math.hypot(self.x, self.y)


@dataclass(frozen=True)
class MorseParams:
    """Coefficients of the pair potential C_a e^{-s/l_a} - C_r e^{-s/l_r}.

    Interactions are short-range repulsive and long-range attractive when
    l_r < l_a and C_r/l_r > C_a/l_a; :func:`validate` checks both.
    """

    C_a: float = 1.0
    C_r: float = 2.0
    l_a: float = 2.0
    l_r: float = 0.5


@dataclass(frozen=True)
class ModelParams:
    """Model parameters: pair potential, anisotropy, heading, particle weight."""

    morse: MorseParams = field(default_factory=MorseParams)
    sigma: float = 0.5  # anisotropy tuning in [0,1]; 1 = isotropic
    v_d: Vec2 = field(default_factory=lambda: Vec2(1.0, 0.0))  # desired velocity
    mass_weight: float = 1.0 / 25.0  # per-particle weight standing in for the density


@dataclass(frozen=True, eq=False)
class ParticleState:
    """Positions of N >= 2 agents at one instant (first-order model: no velocity state)."""

    positions: np.ndarray

    def __post_init__(self):
        pos = np.array(self.positions, dtype=float)
        if pos.ndim != 2 or pos.shape[1] != 2:
            raise ValueError(f"positions must have shape (N, 2), got {pos.shape}")
        if pos.shape[0] < 2:
            raise ValueError("at least 2 particles are required")
        if not np.isfinite(pos).all():
            raise ValueError("positions must be finite")
        pos.setflags(write=False)
        object.__setattr__(self, "positions", pos)

    @property
    def n(self) -> int:
        return self.positions.shape[0]


@dataclass(frozen=True)
class SimConfig:
    """Run configuration: particle count, time grid, recording, seeding."""

    n_particles: int = 25
    dt: float = 1e-3
    t_final: float = 1.0
    record_stride: int = 10
    seed: int = 0
    init_domain: tuple[float, float] = (0.0, 1.0)  # square [lo, hi]^2
    d_floor: float = 1e-4  # dissipation threshold for the corrector-ratio channel


def _finite_pos(v) -> bool:
    return math.isfinite(v) and v > 0


def validate(params: ModelParams, config: SimConfig) -> list[str]:
    """Check every model/config invariant; return the names of violated constraints.

    An empty list means the pair is valid.  Violations are data, not
    exceptions: callers decide how to react.
    """
    bad: list[str] = []
    m = params.morse
    if not _finite_pos(m.C_a):
        bad.append("C_a > 0")
    if not _finite_pos(m.C_r):
        bad.append("C_r > 0")
    if not _finite_pos(m.l_a):
        bad.append("l_a > 0")
    if not _finite_pos(m.l_r):
        bad.append("l_r > 0")
    if not (m.l_r < m.l_a):
        bad.append("l_r < l_a")
    if _finite_pos(m.l_r) and _finite_pos(m.l_a) and not (m.C_r / m.l_r > m.C_a / m.l_a):
        bad.append("C_r / l_r > C_a / l_a")
    if not (math.isfinite(params.sigma) and 0.0 <= params.sigma <= 1.0):
        bad.append("sigma in [0,1]")
    if not params.v_d.norm() > 0.0:
        bad.append("|v_d| > 0")
    if not _finite_pos(params.mass_weight):
        bad.append("mass_weight > 0")

    if config.n_particles < 2:
        bad.append("n_particles >= 2")
    if not _finite_pos(config.dt):
        bad.append("dt > 0")
    if not (math.isfinite(config.t_final) and config.t_final >= config.dt):
        bad.append("t_final >= dt")
    if config.record_stride < 1:
        bad.append("record_stride >= 1")
    if not (0 <= config.seed <= MAX_SEED):
        bad.append("seed in [0, 2^64)")
    lo, hi = config.init_domain
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        bad.append("init_domain low < high")
    if not _finite_pos(config.d_floor):
        bad.append("d_floor > 0")
    return bad


def total_mass(params: ModelParams, config: SimConfig) -> float:
    """Total crowd mass: particle count times the per-particle weight."""
    return config.n_particles * params.mass_weight
