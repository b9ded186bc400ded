"""Randomized invariant suite behind the ``check`` command.

Sweeps crowd sizes and anisotropy levels over seeded random states and
verifies the exact algebraic identities, the symmetry properties, and the
agreement between the vectorized diagnostics and the naive reference
implementations.  Any breach is reported by name; an empty failure list means
the build is numerically sound.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import diagnostics, kinetics, reference
from .model import ModelParams, ParticleState, SimConfig, total_mass

__all__ = ["CheckReport", "run_checks"]

_SIZES = (2, 3, 5, 10, 25)
_SIGMAS = (0.0, 0.25, 0.5, 0.75, 1.0)
_REPS = 3


@dataclass(frozen=True)
class CheckReport:
    n_checks: int
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def run_checks(params: ModelParams, config: SimConfig) -> CheckReport:
    """Run the full invariant and oracle-agreement suite; report failures by name."""
    rng = np.random.default_rng(config.seed)
    n_checks = 0
    failures: list[str] = []

    def check(name: str, value: float, tol: float) -> None:
        nonlocal n_checks
        n_checks += 1
        if not (value <= tol):
            failures.append(f"{name}: {value:.3e} > {tol:.3e}")

    sigmas = sorted(set(_SIGMAS) | {params.sigma})
    for sigma in sigmas:
        p = replace(params, sigma=sigma)
        for n in _SIZES:
            for _ in range(_REPS):
                state = ParticleState(rng.uniform(0.0, 1.0, size=(n, 2)))
                tag = f"[sigma={sigma:g} n={n}]"

                ent = diagnostics.entropy(state, p)
                dis = diagnostics.dissipation(state, p)
                sym, asym = diagnostics.production_terms(state, p)
                vhat = diagnostics.peculiar_velocities(state, p)

                check(
                    f"production split identity {tag}",
                    abs(sym + asym - dis),
                    diagnostics.TOL_IDENTITY,
                )
                check(
                    f"weighted peculiar velocities sum to zero {tag}",
                    float(np.abs(p.mass_weight * vhat.sum(axis=0)).max()),
                    1e-13,
                )
                check(f"dissipation nonnegative {tag}", -dis, 0.0)
                m_total = total_mass(p, replace(config, n_particles=n))
                bound = 0.5 * m_total**2 * (p.morse.C_a + p.morse.C_r)
                check(f"entropy bound {tag}", abs(ent) - bound, 0.0)
                if sigma == 1.0:
                    check(f"isotropic corrector vanishes {tag}", abs(asym), 1e-15 * n**2)

                alpha = 0.5 * (1.0 + sigma)
                ent_iso = diagnostics.entropy(state, replace(p, sigma=1.0))
                check(
                    f"entropy scaling by the even weight {tag}",
                    abs(ent - alpha * ent_iso),
                    1e-12 * max(1.0, abs(ent)),
                )

                shifted = ParticleState(state.positions + np.array([5.0, -3.0]))
                check(
                    f"entropy translation invariance {tag}",
                    abs(diagnostics.entropy(shifted, p) - ent),
                    1e-12 * max(1.0, abs(ent)),
                )
                check(
                    f"dissipation translation invariance {tag}",
                    abs(diagnostics.dissipation(shifted, p) - dis),
                    1e-12 * max(1.0, dis),
                )

                check(
                    f"entropy matches reference {tag}",
                    abs(ent - reference.entropy_naive(state, p)),
                    1e-13 * max(1.0, abs(ent)),
                )
                check(
                    f"dissipation matches definitional reference {tag}",
                    abs(dis - reference.dissipation_via_definition(state, p)),
                    1e-12 * max(1.0, dis),
                )
                check(
                    f"dissipation matches social-velocity reference {tag}",
                    abs(dis - reference.dissipation_via_vs(state, p)),
                    1e-12 * max(1.0, dis),
                )
                check(
                    f"symmetric production matches reference {tag}",
                    abs(sym - reference.sym_production_naive(state, p)),
                    1e-12 * max(1.0, abs(sym)),
                )

    # kernel-level properties, independent of the state sweep
    for _ in range(20):
        x = rng.uniform(-2.0, 2.0, size=2)
        y = rng.uniform(-2.0, 2.0, size=2)
        if np.hypot(*(x - y)) < 1e-6:
            continue
        g = kinetics.grad_w(x, y, params.morse)
        g_swapped = kinetics.grad_w(y, x, params.morse)
        scale = max(1.0, float(np.abs(g).max()))
        check(
            "gradient antisymmetry",
            float(np.abs(g + g_swapped).max()) / scale,
            1e-15,
        )
        h = 1e-6
        fd = np.array(
            [
                (
                    kinetics.morse_w(np.hypot(*(x + e * h - y)), params.morse)
                    - kinetics.morse_w(np.hypot(*(x - e * h - y)), params.morse)
                )
                / (2 * h)
                for e in (np.array([1.0, 0.0]), np.array([0.0, 1.0]))
            ]
        )
        check("gradient matches finite differences", float(np.abs(g - fd).max()), 1e-6)

    for sigma in _SIGMAS:
        split = kinetics.KernelSplit.from_sigma(sigma)
        for eta in np.linspace(-1.0, 1.0, 9):
            val = kinetics.g_of_eta(float(eta), sigma)
            check(f"perception weight in [0,1] [sigma={sigma:g}]", max(val - 1.0, -val), 0.0)
            recon = split.g_sym + split.g_asym_coeff * eta
            check(
                f"perception weight linear split [sigma={sigma:g}]",
                abs(val - recon),
                1e-15,
            )

    return CheckReport(n_checks=n_checks, failures=failures)
