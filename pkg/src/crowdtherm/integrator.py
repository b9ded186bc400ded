"""Deterministic fixed-step time integration of the first-order particle system.

The state is the position array alone; velocities are evaluated from it.  One
step is a classical 4-stage Runge-Kutta update of dx/dt = v(x).  Randomness
enters only through the seeded initial conditions (numpy PCG64), so a
(seed, params, config) triple fully determines a trajectory.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kinetics import _velocities
from .model import ModelParams, ParticleState, SimConfig, validate

__all__ = [
    "SCHEME_NAME",
    "GENERATOR_NAME",
    "NonFiniteStateError",
    "Trajectory",
    "initial_conditions",
    "step",
    "simulate",
]

SCHEME_NAME = "rk4-classic"
GENERATOR_NAME = "numpy-pcg64"


class NonFiniteStateError(RuntimeError):
    """Integration produced NaN or Inf positions."""

    def __init__(self, t: float):
        super().__init__(f"non-finite state at t = {t:g}")
        self.t = t

    def __reduce__(self):
        return (NonFiniteStateError, (self.t,))


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Recorded instants and the matching particle states."""

    times: np.ndarray
    states: list[ParticleState]

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        if len(self.states) != t.shape[0]:
            raise ValueError("times and states must have equal length")
        if t.shape[0] >= 2 and not np.all(np.diff(t) > 0):
            raise ValueError("times must be strictly increasing")
        object.__setattr__(self, "times", t)

    @property
    def n_records(self) -> int:
        return len(self.states)


def initial_conditions(seed: int, config: SimConfig) -> ParticleState:
    """Positions i.i.d. uniform on the init domain; same seed, same state."""
    rng = np.random.default_rng(seed)
    lo, hi = config.init_domain
    return ParticleState(rng.uniform(lo, hi, size=(config.n_particles, 2)))


def _rk4(pos: np.ndarray, params: ModelParams, dt: float) -> np.ndarray:
    k1 = _velocities(pos, params)
    k2 = _velocities(pos + 0.5 * dt * k1, params)
    k3 = _velocities(pos + 0.5 * dt * k2, params)
    k4 = _velocities(pos + dt * k3, params)
    return pos + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def step(state: ParticleState, params: ModelParams, dt: float) -> ParticleState:
    """One classical Runge-Kutta step of the particle system."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    return ParticleState(_rk4(state.positions, params, dt))


def simulate(config: SimConfig, params: ModelParams) -> Trajectory:
    """Integrate from seeded initial conditions to t_final with fixed dt.

    Records every record_stride-th step, always including t = 0 and the final
    instant.  Raises :class:`NonFiniteStateError` with the offending time if
    the state degenerates, and ValueError if (params, config) fail validation.
    """
    violations = validate(params, config)
    if violations:
        raise ValueError("invalid parameters: " + ", ".join(violations))

    state0 = initial_conditions(config.seed, config)
    n_steps = max(1, round(config.t_final / config.dt))
    pos = state0.positions
    times = [0.0]
    states = [state0]
    for k in range(1, n_steps + 1):
        pos = _rk4(pos, params, config.dt)
        if not np.isfinite(pos).all():
            raise NonFiniteStateError(k * config.dt)
        if k % config.record_stride == 0 or k == n_steps:
            times.append(k * config.dt)
            states.append(ParticleState(pos.copy()))
    return Trajectory(np.array(times), states)
