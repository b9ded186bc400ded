"""Naive reference implementations of the diagnostics, for cross-checking.

Everything here is a literal double-loop transcription built on ``math.exp``
alone.  It deliberately shares no pairwise code with the vectorized modules,
so transcription or indexing bugs on either side show up as disagreement.
Intended for tests and the ``check`` command; runs only at small N.
"""
from __future__ import annotations

import math

from .model import ModelParams, ParticleState

__all__ = [
    "entropy_naive",
    "dissipation_via_definition",
    "dissipation_via_vs",
    "sym_production_naive",
]

_SKIP_TOL = 1e-12  # same coincidence policy as the production path


def _w(s: float, p: ModelParams) -> float:
    m = p.morse
    return m.C_a * math.exp(-s / m.l_a) - m.C_r * math.exp(-s / m.l_r)


def _wp(s: float, p: ModelParams) -> float:
    m = p.morse
    return -(m.C_a / m.l_a) * math.exp(-s / m.l_a) + (m.C_r / m.l_r) * math.exp(-s / m.l_r)


def _g(eta: float, sigma: float) -> float:
    return 0.5 * (1.0 + sigma) - 0.5 * (1.0 - sigma) * eta


def _social(state: ParticleState, p: ModelParams) -> list[tuple[float, float]]:
    pos = state.positions
    vdx, vdy = p.v_d.x, p.v_d.y
    vdn = math.hypot(vdx, vdy)
    out = []
    for i in range(state.n):
        sx = sy = 0.0
        for j in range(state.n):
            if j == i:
                continue
            dx = pos[i, 0] - pos[j, 0]
            dy = pos[i, 1] - pos[j, 1]
            r = math.hypot(dx, dy)
            if r < _SKIP_TOL:
                continue
            eta = (dx * vdx + dy * vdy) / (r * vdn)
            c = p.mass_weight * _g(eta, p.sigma) * _wp(r, p) / r
            sx += c * dx
            sy += c * dy
        out.append((sx, sy))
    return out


def _peculiar(state: ParticleState, p: ModelParams) -> list[tuple[float, float]]:
    soc = _social(state, p)
    n = state.n
    # desired velocity cancels in v - v0, so only the social part matters
    mx = sum(s[0] for s in soc) / n
    my = sum(s[1] for s in soc) / n
    return [(sx - mx, sy - my) for sx, sy in soc]


def entropy_naive(state: ParticleState, p: ModelParams) -> float:
    """Entropy via the full double sum, no symmetry exploitation."""
    pos = state.positions
    vdx, vdy = p.v_d.x, p.v_d.y
    vdn = math.hypot(vdx, vdy)
    total = 0.0
    for i in range(state.n):
        for j in range(state.n):
            if j == i:
                continue
            dx = pos[i, 0] - pos[j, 0]
            dy = pos[i, 1] - pos[j, 1]
            r = math.hypot(dx, dy)
            if r < _SKIP_TOL:
                continue
            eta = (dx * vdx + dy * vdy) / (r * vdn)
            total += _w(r, p) * _g(eta, p.sigma)
    return 0.5 * p.mass_weight**2 * total


def dissipation_via_definition(state: ParticleState, p: ModelParams) -> float:
    """Dissipation as the weighted sum of squared peculiar speeds."""
    return p.mass_weight * sum(vx * vx + vy * vy for vx, vy in _peculiar(state, p))


def dissipation_via_vs(state: ParticleState, p: ModelParams) -> float:
    """Dissipation as the weighted sum of social velocity dotted with peculiar velocity.

    Equal to the definitional form because the weighted peculiar velocities
    sum to zero.
    """
    soc = _social(state, p)
    pec = _peculiar(state, p)
    return p.mass_weight * sum(
        sx * vx + sy * vy for (sx, sy), (vx, vy) in zip(soc, pec)
    )


def sym_production_naive(state: ParticleState, p: ModelParams) -> float:
    """Symmetric production term in its constant-weight form.

    Half the even part of the directional weight times the double sum of the
    potential gradient dotted with peculiar-velocity differences.
    """
    pos = state.positions
    pec = _peculiar(state, p)
    alpha = 0.5 * (1.0 + p.sigma)
    total = 0.0
    for i in range(state.n):
        for j in range(state.n):
            if j == i:
                continue
            dx = pos[i, 0] - pos[j, 0]
            dy = pos[i, 1] - pos[j, 1]
            r = math.hypot(dx, dy)
            if r < _SKIP_TOL:
                continue
            wp = _wp(r, p)
            dvx = pec[i][0] - pec[j][0]
            dvy = pec[i][1] - pec[j][1]
            total += wp * (dx * dvx + dy * dvy) / r
    return 0.5 * alpha * p.mass_weight**2 * total
