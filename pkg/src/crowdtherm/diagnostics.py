"""Thermodynamic-style diagnostics of a particle state or trajectory.

Five scalar channels are computed from a state: entropy (pairwise potential
weighted by perception), dissipation (weighted squared peculiar speeds), the
symmetric and antisymmetric production terms whose sum equals the dissipation
exactly, and the barycentric velocity underlying the peculiar-velocity
decomposition.  Series-level helpers add the numerical entropy rate and the
three-way consistency report.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .integrator import Trajectory
from .kinetics import KernelSplit, _pair_tables, _velocities, morse_w, morse_w_prime
from .model import ModelParams, ParticleState

__all__ = [
    "TOL_IDENTITY",
    "DiagnosticsSample",
    "DiagnosticsSeries",
    "ConsistencyReport",
    "barycentre",
    "barycentric_velocity",
    "peculiar_velocities",
    "dissipation",
    "entropy",
    "production_terms",
    "numeric_derivative",
    "series",
    "consistency_report",
    "ratio_sa_over_d",
]

# absolute rounding budget for the exact identity dissipation = sym + asym
TOL_IDENTITY = 1e-10


@dataclass(frozen=True)
class DiagnosticsSample:
    """All scalar channels at one recording instant."""

    t: float
    entropy: float
    dissipation: float
    sym_production: float
    asym_production: float


@dataclass(frozen=True, eq=False)
class DiagnosticsSeries:
    """Time-ordered diagnostic channels with the numerical entropy rate."""

    t: np.ndarray
    entropy: np.ndarray
    dissipation: np.ndarray
    sym_production: np.ndarray
    asym_production: np.ndarray
    entropy_rate_numeric: np.ndarray

    def __post_init__(self):
        n = self.t.shape[0]
        for name in (
            "entropy",
            "dissipation",
            "sym_production",
            "asym_production",
            "entropy_rate_numeric",
        ):
            if getattr(self, name).shape[0] != n:
                raise ValueError(f"{name} is not aligned with the time grid")

    @property
    def samples(self) -> list[DiagnosticsSample]:
        return [
            DiagnosticsSample(
                float(self.t[k]),
                float(self.entropy[k]),
                float(self.dissipation[k]),
                float(self.sym_production[k]),
                float(self.asym_production[k]),
            )
            for k in range(self.t.shape[0])
        ]


@dataclass(frozen=True, eq=False)
class ConsistencyReport:
    """Three routes to the entropy rate and their maximal mutual deviations."""

    times: np.ndarray
    sym_production: np.ndarray
    numeric_rate: np.ndarray
    dissipation_balance: np.ndarray  # dissipation minus asym production
    max_dev_algebraic: float  # sym production vs dissipation balance
    max_dev_numeric_sym: float  # numeric rate vs sym production
    max_dev_numeric_balance: float  # numeric rate vs dissipation balance


def barycentre(state: ParticleState, params: ModelParams) -> np.ndarray:
    """Centre of mass of the crowd (uniform weights: plain position mean)."""
    return state.positions.mean(axis=0)


def barycentric_velocity(state: ParticleState, params: ModelParams) -> np.ndarray:
    """Mass-weighted mean velocity (velocity of the centre of mass)."""
    return _velocities(state.positions, params).mean(axis=0)


def peculiar_velocities(state: ParticleState, params: ModelParams) -> np.ndarray:
    """Velocities relative to the barycentric velocity; weighted sum is zero."""
    v = _velocities(state.positions, params)
    return v - v.mean(axis=0)


def dissipation(state: ParticleState, params: ModelParams) -> float:
    """Weighted sum of squared peculiar speeds; nonnegative, zero iff co-moving."""
    vhat = peculiar_velocities(state, params)
    return float(params.mass_weight * (vhat**2).sum())


def entropy(state: ParticleState, params: ModelParams) -> float:
    """Half the pair sum of potential times directional weight.

    Bounded in absolute value by half the squared total mass times
    (C_a + C_r); coincident pairs are skipped (logged by the kernel layer).
    """
    split = KernelSplit.from_sigma(params.sigma)
    _, dist, _, eta = _pair_tables(state.positions, params)
    gt = split.g_sym + split.g_asym_coeff * eta
    w = morse_w(dist, params.morse)
    return float(0.5 * params.mass_weight**2 * (w * gt).sum())


def production_terms(state: ParticleState, params: ModelParams) -> tuple[float, float]:
    """Symmetric and antisymmetric production terms; their sum equals the dissipation.

    The antisymmetric term vanishes identically for sigma = 1 (isotropy).
    """
    split = KernelSplit.from_sigma(params.sigma)
    diff, dist, inv, eta = _pair_tables(state.positions, params)
    vhat = peculiar_velocities(state, params)
    wp = morse_w_prime(dist, params.morse)
    direction = diff * inv[:, :, None]
    proj_minus = np.einsum("ijk,ijk->ij", direction, vhat[:, None, :] - vhat[None, :, :])
    proj_plus = np.einsum("ijk,ijk->ij", direction, vhat[:, None, :] + vhat[None, :, :])
    m2 = params.mass_weight**2
    sym = float(0.5 * m2 * split.g_sym * (wp * proj_minus).sum())
    asym = float(0.5 * m2 * (wp * proj_plus * (split.g_asym_coeff * eta)).sum())
    return sym, asym


def numeric_derivative(times: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Finite-difference time derivative of a sampled series.

    Central differences in the interior, first-order one-sided at the two
    endpoints; exact on linear data.
    """
    t = np.asarray(times, dtype=float)
    v = np.asarray(values, dtype=float)
    if t.shape[0] < 2:
        raise ValueError("need at least 2 samples")
    if not np.all(np.diff(t) > 0):
        raise ValueError("times must be strictly increasing")
    out = np.empty_like(v)
    out[0] = (v[1] - v[0]) / (t[1] - t[0])
    out[-1] = (v[-1] - v[-2]) / (t[-1] - t[-2])
    if t.shape[0] > 2:
        out[1:-1] = (v[2:] - v[:-2]) / (t[2:] - t[:-2])
    return out


def series(trajectory: Trajectory, params: ModelParams) -> DiagnosticsSeries:
    """Evaluate every diagnostic channel along a trajectory."""
    n = trajectory.n_records
    ent = np.empty(n)
    dis = np.empty(n)
    sym = np.empty(n)
    asym = np.empty(n)
    for k, state in enumerate(trajectory.states):
        ent[k] = entropy(state, params)
        dis[k] = dissipation(state, params)
        sym[k], asym[k] = production_terms(state, params)
    rate = numeric_derivative(trajectory.times, ent)
    return DiagnosticsSeries(
        t=trajectory.times.copy(),
        entropy=ent,
        dissipation=dis,
        sym_production=sym,
        asym_production=asym,
        entropy_rate_numeric=rate,
    )


def consistency_report(trajectory: Trajectory, params: ModelParams) -> ConsistencyReport:
    """Compare the three equivalent routes to the entropy rate along a run."""
    if trajectory.n_records < 2:
        raise ValueError("need at least 2 records")
    d = series(trajectory, params)
    balance = d.dissipation - d.asym_production
    return ConsistencyReport(
        times=d.t,
        sym_production=d.sym_production,
        numeric_rate=d.entropy_rate_numeric,
        dissipation_balance=balance,
        max_dev_algebraic=float(np.abs(d.sym_production - balance).max()),
        max_dev_numeric_sym=float(np.abs(d.entropy_rate_numeric - d.sym_production).max()),
        max_dev_numeric_balance=float(np.abs(d.entropy_rate_numeric - balance).max()),
    )


def ratio_sa_over_d(d: DiagnosticsSeries, d_floor: float) -> list[tuple[float, float]]:
    """Corrector-to-dissipation ratio on the times where dissipation >= d_floor.

    Times below the floor are omitted: dividing two near-zero channels carries
    no information.
    """
    out: list[tuple[float, float]] = []
    for k in range(d.t.shape[0]):
        if d.dissipation[k] >= d_floor:
            out.append((float(d.t[k]), float(d.asym_production[k] / d.dissipation[k])))
    return out
