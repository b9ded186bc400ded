"""Seeded multi-run driver with per-time envelope statistics.

Run k of an ensemble uses seed (base_seed + k) mod 2^64, so the whole
ensemble is reproducible from its configuration.  Runs are independent and
may execute in parallel worker processes; aggregation happens after all runs
complete, keyed by run index, so results never depend on scheduling order.
"""
from __future__ import annotations

import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import diagnostics
from .integrator import NonFiniteStateError, simulate
from .model import ModelParams, SimConfig, validate

__all__ = ["EnsembleRunError", "EnsembleStats", "run_ensemble", "limit_spread"]

_SEED_MOD = 2**64


class EnsembleRunError(RuntimeError):
    """A run of the ensemble aborted; carries the failing seed."""

    def __init__(self, run_index: int, seed: int, cause: str):
        super().__init__(f"run {run_index} (seed {seed}) aborted: {cause}")
        self.run_index = run_index
        self.seed = seed
        self.cause = cause

    def __reduce__(self):
        return (EnsembleRunError, (self.run_index, self.seed, self.cause))


@dataclass(frozen=True, eq=False)
class EnsembleStats:
    """Per-time min/mean/max over runs of each diagnostic channel.

    ``rate`` is the dissipation minus the asymmetric production (the entropy
    rate); ``corrector_ratio`` is asym production over dissipation, defined
    only where the dissipation clears the configured floor (NaN elsewhere).
    ``limit_spread`` tracks the worst entropy gap between the first run and
    any other run; ``corrector_ratio_medians`` holds one median of the
    absolute ratio per run.
    """

    times: np.ndarray
    rate_min: np.ndarray
    rate_mean: np.ndarray
    rate_max: np.ndarray
    dissipation_min: np.ndarray
    dissipation_mean: np.ndarray
    dissipation_max: np.ndarray
    entropy_min: np.ndarray
    entropy_mean: np.ndarray
    entropy_max: np.ndarray
    corrector_ratio_min: np.ndarray
    corrector_ratio_mean: np.ndarray
    corrector_ratio_max: np.ndarray
    limit_spread: np.ndarray
    corrector_ratio_medians: np.ndarray
    n_runs: int


def limit_spread(entropy_by_run: np.ndarray) -> np.ndarray:
    """Pointwise max over k >= 2 of |S_1(t) - S_k(t)| for per-run entropy series.

    Requires at least two runs sampled on one common time grid.
    """
    rows = [np.asarray(r, dtype=float) for r in entropy_by_run]
    if len(rows) < 2:
        raise ValueError("need at least 2 runs")
    width = rows[0].shape[0]
    if any(r.shape != (width,) for r in rows):
        raise ValueError("runs are not on a common time grid")
    mat = np.vstack(rows)
    return np.abs(mat[1:] - mat[0][None, :]).max(axis=0)


def _run_channels(args):
    """One simulation run -> (run index, times, entropy, dissipation, asym production)."""
    k, config, params = args
    try:
        traj = simulate(config, params)
    except NonFiniteStateError as exc:
        raise EnsembleRunError(k, config.seed, str(exc)) from exc
    d = diagnostics.series(traj, params)
    return k, d.t, d.entropy, d.dissipation, d.asym_production


def run_ensemble(
    n_runs: int,
    base_config: SimConfig,
    params: ModelParams,
    n_jobs: int = 1,
) -> EnsembleStats:
    """Simulate n_runs independent runs and aggregate the diagnostic channels.

    Deterministic for fixed inputs.  If any run produces a non-finite state
    the whole call fails with :class:`EnsembleRunError` naming the seed; no
    partial aggregates are returned.
    """
    if n_runs < 1:
        raise ValueError("n_runs must be >= 1")
    violations = validate(params, base_config)
    if violations:
        raise ValueError("invalid parameters: " + ", ".join(violations))

    seeds = [(base_config.seed + k) % _SEED_MOD for k in range(n_runs)]
    jobs = [(k, replace(base_config, seed=seeds[k]), params) for k in range(n_runs)]

    results: list = [None] * n_runs
    if n_jobs > 1:
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            for res in pool.map(_run_channels, jobs):
                results[res[0]] = res
    else:
        for job in jobs:
            res = _run_channels(job)
            results[res[0]] = res

    times = results[0][1]
    ent = np.vstack([r[2] for r in results])
    dis = np.vstack([r[3] for r in results])
    asym = np.vstack([r[4] for r in results])
    rate = dis - asym

    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(dis >= base_config.d_floor, asym / dis, np.nan)

    with warnings.catch_warnings():
        # all-NaN time slices (no run above the floor) aggregate to NaN
        warnings.simplefilter("ignore", category=RuntimeWarning)
        ratio_min = np.nanmin(ratio, axis=0)
        ratio_mean = np.nanmean(ratio, axis=0)
        ratio_max = np.nanmax(ratio, axis=0)
        medians = np.nanmedian(np.abs(ratio), axis=1)

    spread = (
        limit_spread(ent) if n_runs >= 2 else np.zeros_like(times)
    )
    return EnsembleStats(
        times=times,
        rate_min=rate.min(axis=0),
        rate_mean=rate.mean(axis=0),
        rate_max=rate.max(axis=0),
        dissipation_min=dis.min(axis=0),
        dissipation_mean=dis.mean(axis=0),
        dissipation_max=dis.max(axis=0),
        entropy_min=ent.min(axis=0),
        entropy_mean=ent.mean(axis=0),
        entropy_max=ent.max(axis=0),
        corrector_ratio_min=ratio_min,
        corrector_ratio_mean=ratio_mean,
        corrector_ratio_max=ratio_max,
        limit_spread=spread,
        corrector_ratio_medians=medians,
        n_runs=n_runs,
    )
