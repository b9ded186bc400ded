"""Pairwise kernel mathematics: Morse potential, anisotropic perception weight,
and the social/total velocity fields.

All pair sums run the plain O(N^2) double loop in vectorized form; at the
crowd sizes this package targets (tens of particles) that is exact and fast.
Coincident pairs (separation below :data:`COINCIDENCE_TOL`) contribute zero to
every sum and emit a logged warning instead of aborting; exact self-pairs are
always excluded.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .model import ModelParams, MorseParams, ParticleState

__all__ = [
    "COINCIDENCE_TOL",
    "DegeneratePairError",
    "KernelSplit",
    "morse_w",
    "morse_w_prime",
    "grad_w",
    "g_of_eta",
    "g_tilde",
    "social_velocity",
    "velocity_field",
]

logger = logging.getLogger(__name__)

COINCIDENCE_TOL = 1e-12

# slack for direction cosines that drift past +-1 by rounding
_ETA_TOL = 1e-9


class DegeneratePairError(ValueError):
    """A pair separation is too small to define an interaction direction."""


@dataclass(frozen=True)
class KernelSplit:
    """Even/odd decomposition of the directional weight for linear anisotropy.

    The even part is the constant ``g_sym``; the odd part is
    ``g_asym_coeff`` times the direction cosine against the desired heading.
    """

    g_sym: float
    g_asym_coeff: float

    @classmethod
    def from_sigma(cls, sigma: float) -> "KernelSplit":
        return cls(g_sym=0.5 * (1.0 + sigma), g_asym_coeff=-0.5 * (1.0 - sigma))


def morse_w(s, morse: MorseParams):
    """Pair potential value at separation s >= 0 (scalar or array)."""
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise ValueError("separation must be nonnegative")
    out = morse.C_a * np.exp(-s / morse.l_a) - morse.C_r * np.exp(-s / morse.l_r)
    return out if out.ndim else float(out)


def morse_w_prime(s, morse: MorseParams):
    """Radial derivative of the pair potential at separation s > 0 (scalar or array)."""
    s = np.asarray(s, dtype=float)
    if np.any(s <= 0):
        raise ValueError("separation must be positive")
    out = -(morse.C_a / morse.l_a) * np.exp(-s / morse.l_a) + (
        morse.C_r / morse.l_r
    ) * np.exp(-s / morse.l_r)
    return out if out.ndim else float(out)


def grad_w(x, y, morse: MorseParams) -> np.ndarray:
    """Gradient of the pair potential in the first argument: W'(|x-y|) (x-y)/|x-y|.

    Antisymmetric under swapping the arguments.  Raises
    :class:`DegeneratePairError` at (near-)coincident points.
    """
    d = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
    r = math.hypot(d[0], d[1])
    if r < COINCIDENCE_TOL:
        raise DegeneratePairError(f"separation {r:.3e} below {COINCIDENCE_TOL:.0e}")
    return morse_w_prime(r, morse) * (d / r)


def g_of_eta(eta: float, sigma: float) -> float:
    """Perception weight as a function of the direction cosine eta in [-1, 1].

    Linear and decreasing in eta for sigma < 1; constant 1 for sigma = 1.
    """
    if abs(eta) > 1.0 + _ETA_TOL:
        raise ValueError(f"direction cosine {eta} outside [-1, 1]")
    eta = min(1.0, max(-1.0, eta))
    return 0.5 * (1.0 + sigma) - 0.5 * (1.0 - sigma) * eta


def g_tilde(xi, params: ModelParams) -> float:
    """Directional weight of a nonzero offset vector against the desired heading."""
    xi = np.asarray(xi, dtype=float)
    r = math.hypot(xi[0], xi[1])
    if r < COINCIDENCE_TOL:
        raise DegeneratePairError("zero offset vector has no direction")
    vd = params.v_d.as_array()
    eta = float(xi @ vd) / (r * params.v_d.norm())
    return g_of_eta(eta, params.sigma)


def _pair_tables(positions: np.ndarray, params: ModelParams):
    """Pairwise offsets, distances, inverse distances and direction cosines.

    diff[i, j] = x_i - x_j.  Distances on the diagonal and on coincident
    pairs are set to +inf so that downstream kernels (which all decay to
    zero) drop those contributions; coincident pairs are logged.
    """
    diff = positions[:, None, :] - positions[None, :, :]
    dist = np.sqrt((diff**2).sum(axis=-1))
    np.fill_diagonal(dist, np.inf)
    close = dist < COINCIDENCE_TOL
    if close.any():
        for i, j in np.argwhere(np.triu(close, 1)):
            logger.warning(
                "degenerate pair (%d, %d): separation below %g, contribution dropped",
                i,
                j,
                COINCIDENCE_TOL,
            )
        dist = np.where(close, np.inf, dist)
    inv = 1.0 / dist
    vd = params.v_d.as_array()
    eta = (diff @ (vd / params.v_d.norm())) * inv
    return diff, dist, inv, eta


def _velocities(positions: np.ndarray, params: ModelParams) -> np.ndarray:
    """Total velocity of every particle, as an (N, 2) array."""
    split = KernelSplit.from_sigma(params.sigma)
    diff, dist, inv, eta = _pair_tables(positions, params)
    gt = split.g_sym + split.g_asym_coeff * eta
    wp = morse_w_prime(dist, params.morse)
    coef = params.mass_weight * gt * wp * inv
    vs = np.einsum("ij,ijk->ik", coef, diff)
    return params.v_d.as_array() + vs


def social_velocity(i: int, state: ParticleState, params: ModelParams) -> np.ndarray:
    """Interaction contribution to the velocity of particle i.

    Weighted sum over the other particles of the directional weight times the
    potential gradient.  Coincident pairs are dropped with a logged warning.
    """
    pos = state.positions
    out = np.zeros(2)
    for j in range(state.n):
        if j == i:
            continue
        d = pos[i] - pos[j]
        r = math.hypot(d[0], d[1])
        if r < COINCIDENCE_TOL:
            logger.warning(
                "degenerate pair (%d, %d): separation below %g, contribution dropped",
                i,
                j,
                COINCIDENCE_TOL,
            )
            continue
        out += g_tilde(d, params) * morse_w_prime(r, params.morse) * (d / r)
    return params.mass_weight * out


def velocity_field(state: ParticleState, params: ModelParams) -> np.ndarray:
    """Desired velocity plus the social velocity, for all particles at once."""
    return _velocities(state.positions, params)
