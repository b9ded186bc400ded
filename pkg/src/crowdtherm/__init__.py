"""First-order nonlocal crowd simulation with entropy and dissipation diagnostics.

A planar crowd moves with a constant desired velocity plus a pairwise social
velocity built from a Morse-type potential and an anisotropic perception
weight.  The package integrates the particle system, evaluates the
entropy/dissipation diagnostic channels and their exact production split,
and drives seeded single-run and ensemble experiments from a small CLI.
"""

__version__ = "0.1.0"

from .checks import CheckReport, run_checks
from .config import ConfigError, RunMetadata, parse_config
from .diagnostics import (
    ConsistencyReport,
    DiagnosticsSample,
    DiagnosticsSeries,
    barycentre,
    barycentric_velocity,
    consistency_report,
    dissipation,
    entropy,
    numeric_derivative,
    peculiar_velocities,
    production_terms,
    ratio_sa_over_d,
    series,
)
from .ensemble import EnsembleRunError, EnsembleStats, limit_spread, run_ensemble
from .integrator import (
    NonFiniteStateError,
    Trajectory,
    initial_conditions,
    simulate,
    step,
)
from .kinetics import (
    DegeneratePairError,
    KernelSplit,
    g_of_eta,
    g_tilde,
    grad_w,
    morse_w,
    morse_w_prime,
    social_velocity,
    velocity_field,
)
from .model import (
    ModelParams,
    MorseParams,
    ParticleState,
    SimConfig,
    Vec2,
    total_mass,
    validate,
)

__all__ = [
    "__version__",
    "Vec2",
    "MorseParams",
    "ModelParams",
    "ParticleState",
    "SimConfig",
    "validate",
    "total_mass",
    "KernelSplit",
    "DegeneratePairError",
    "morse_w",
    "morse_w_prime",
    "grad_w",
    "g_of_eta",
    "g_tilde",
    "social_velocity",
    "velocity_field",
    "Trajectory",
    "NonFiniteStateError",
    "initial_conditions",
    "step",
    "simulate",
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
    "EnsembleStats",
    "EnsembleRunError",
    "run_ensemble",
    "limit_spread",
    "ConfigError",
    "RunMetadata",
    "parse_config",
    "CheckReport",
    "run_checks",
]
