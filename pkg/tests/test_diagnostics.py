import math

import numpy as np
import pytest

from crowdtherm import (
    ModelParams,
    MorseParams,
    ParticleState,
    SimConfig,
    Vec2,
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
    simulate,
    total_mass,
    velocity_field,
)
from crowdtherm.diagnostics import TOL_IDENTITY
from conftest import make_state


def _pair_reference(r, sigma, m):
    """Closed form for two particles on the heading axis at separation r."""
    w = math.exp(-r / 2.0) - 2.0 * math.exp(-2.0 * r)
    wp = -0.5 * math.exp(-r / 2.0) + 4.0 * math.exp(-2.0 * r)
    alpha = 0.5 * (1.0 + sigma)
    return {
        "v0": np.array([1.0 + 0.5 * m * (sigma - 1.0) * wp, 0.0]),
        "vhat_lead": np.array([m * alpha * wp, 0.0]),
        "dissipation": 2.0 * m**3 * alpha**2 * wp**2,
        "entropy": m**2 * alpha * w,
    }


def _pair_state(r):
    return ParticleState([[0.0, 0.0], [r, 0.0]])


def _pair_params(sigma=0.5, m=0.5):
    return ModelParams(sigma=sigma, v_d=Vec2(1.0, 0.0), mass_weight=m)


def test_two_particle_barycentric_velocity():
    r, sigma, m = 0.8, 0.5, 0.5
    ref = _pair_reference(r, sigma, m)
    v0 = barycentric_velocity(_pair_state(r), _pair_params(sigma, m))
    assert v0 == pytest.approx(ref["v0"], rel=1e-13)


def test_two_particle_peculiar_velocities_are_opposite():
    r, sigma, m = 0.8, 0.5, 0.5
    ref = _pair_reference(r, sigma, m)
    vhat = peculiar_velocities(_pair_state(r), _pair_params(sigma, m))
    assert vhat[1] == pytest.approx(ref["vhat_lead"], rel=1e-13)
    assert vhat[0] == pytest.approx(-ref["vhat_lead"], rel=1e-13)


def test_two_particle_dissipation_and_entropy():
    r, sigma, m = 0.8, 0.5, 0.5
    ref = _pair_reference(r, sigma, m)
    state, p = _pair_state(r), _pair_params(sigma, m)
    assert dissipation(state, p) == pytest.approx(ref["dissipation"], rel=1e-13)
    assert entropy(state, p) == pytest.approx(ref["entropy"], rel=1e-13)


def test_two_particle_corrector_vanishes():
    # equal weights force opposite peculiar velocities, killing the odd term
    sym, asym = production_terms(_pair_state(0.8), _pair_params())
    assert asym == pytest.approx(0.0, abs=1e-17)
    assert sym == pytest.approx(dissipation(_pair_state(0.8), _pair_params()), rel=1e-12)


def test_barycentric_velocity_without_interactions_is_desired_velocity(rng):
    p = ModelParams(morse=MorseParams(C_a=0.0, C_r=0.0))
    state = make_state(rng, n=6)
    assert barycentric_velocity(state, p) == pytest.approx(p.v_d.as_array())
    assert np.abs(peculiar_velocities(state, p)).max() == 0.0
    assert dissipation(state, p) == 0.0


def test_weighted_peculiar_velocities_sum_to_zero(rng, params):
    for n in (2, 5, 25):
        state = make_state(rng, n=n)
        vhat = peculiar_velocities(state, params)
        assert np.abs(params.mass_weight * vhat.sum(axis=0)).max() <= 1e-13


def test_rescaling_the_heading_leaves_peculiar_velocities_unchanged(rng):
    # the heading direction fixes the anisotropy axis, so only direction-
    # preserving changes of the desired velocity are neutral
    state = make_state(rng, n=8)
    base = ModelParams(v_d=Vec2(1.0, 0.0))
    scaled = ModelParams(v_d=Vec2(3.0, 0.0))
    assert np.allclose(
        peculiar_velocities(state, base),
        peculiar_velocities(state, scaled),
        atol=1e-12,
    )
    assert dissipation(state, base) == pytest.approx(dissipation(state, scaled), abs=1e-12)
    assert production_terms(state, base) == pytest.approx(
        production_terms(state, scaled), abs=1e-12
    )


def test_dissipation_nonnegative_and_via_social_velocity(rng, params):
    vd = params.v_d.as_array()
    for _ in range(10):
        state = make_state(rng, n=12)
        d = dissipation(state, params)
        assert d >= 0.0
        vhat = peculiar_velocities(state, params)
        vs = velocity_field(state, params) - vd
        alt = params.mass_weight * float((vs * vhat).sum())
        assert d == pytest.approx(alt, abs=1e-12)


def test_entropy_of_far_separated_crowd_is_negligible(params):
    state = ParticleState([[0.0, 0.0], [100.0, 0.0], [0.0, 100.0]])
    assert abs(entropy(state, params)) < 1e-9


def test_entropy_scales_with_the_even_weight(rng):
    for sigma in (0.0, 0.25, 0.5, 0.75):
        p = ModelParams(sigma=sigma)
        p_iso = ModelParams(sigma=1.0)
        alpha = 0.5 * (1.0 + sigma)
        for n in (2, 5, 25):
            state = make_state(rng, n=n)
            assert entropy(state, p) == pytest.approx(
                alpha * entropy(state, p_iso), abs=1e-12
            )


def test_entropy_bound(rng, params, config):
    bound = 0.5 * total_mass(params, config) ** 2 * (params.morse.C_a + params.morse.C_r)
    for _ in range(10):
        state = make_state(rng, n=config.n_particles, span=0.3)
        assert abs(entropy(state, params)) <= bound


def test_production_split_identity(rng):
    for sigma in (0.0, 0.5, 1.0):
        p = ModelParams(sigma=sigma)
        for _ in range(10):
            state = make_state(rng, n=15)
            d = dissipation(state, p)
            sym, asym = production_terms(state, p)
            assert abs(sym + asym - d) <= max(TOL_IDENTITY, 1e-12 * max(1.0, d))


def test_isotropic_corrector_is_exactly_zero(rng):
    p = ModelParams(sigma=1.0)
    for _ in range(10):
        state = make_state(rng, n=10)
        sym, asym = production_terms(state, p)
        assert asym == 0.0
        assert sym == pytest.approx(dissipation(state, p), abs=1e-12)


def test_diagnostics_are_translation_invariant(rng, params):
    state = make_state(rng, n=12)
    shifted = ParticleState(state.positions + np.array([5.0, -3.0]))
    assert entropy(shifted, params) == pytest.approx(entropy(state, params), abs=1e-12)
    assert dissipation(shifted, params) == pytest.approx(
        dissipation(state, params), abs=1e-12
    )
    assert production_terms(shifted, params) == pytest.approx(
        production_terms(state, params), abs=1e-12
    )


def test_diagnostics_are_permutation_invariant(rng, params):
    state = make_state(rng, n=12)
    perm = rng.permutation(12)
    shuffled = ParticleState(state.positions[perm])
    assert entropy(shuffled, params) == pytest.approx(entropy(state, params), abs=1e-12)
    assert dissipation(shuffled, params) == pytest.approx(
        dissipation(state, params), abs=1e-12
    )
    assert production_terms(shuffled, params) == pytest.approx(
        production_terms(state, params), abs=1e-12
    )


def test_barycentre_is_the_position_mean(rng, params):
    state = make_state(rng, n=7)
    assert barycentre(state, params) == pytest.approx(state.positions.mean(axis=0))


def test_numeric_derivative_constant_series():
    t = np.linspace(0, 1, 11)
    assert np.array_equal(numeric_derivative(t, np.full(11, 3.7)), np.zeros(11))


def test_numeric_derivative_exact_on_linear_data():
    t = np.linspace(0, 1, 11)
    out = numeric_derivative(t, 2.5 * t)
    assert out == pytest.approx(np.full(11, 2.5))


def test_numeric_derivative_quadratic_interior_exact_endpoints_first_order():
    h = 0.1
    t = np.arange(0.0, 1.0 + h / 2, h)
    out = numeric_derivative(t, t**2)
    assert out[1:-1] == pytest.approx(2.0 * t[1:-1], abs=1e-12)
    # first-order one-sided endpoints: error is exactly h on a quadratic
    assert abs(out[0] - 0.0) == pytest.approx(h, rel=1e-9)
    assert abs(out[-1] - 2.0 * t[-1]) == pytest.approx(h, rel=1e-9)


def test_numeric_derivative_rejects_degenerate_input():
    with pytest.raises(ValueError):
        numeric_derivative(np.array([0.0]), np.array([1.0]))
    with pytest.raises(ValueError):
        numeric_derivative(np.array([0.0, 0.0]), np.array([1.0, 2.0]))


def test_series_channels_are_aligned_and_sound(params):
    traj = simulate(SimConfig(t_final=0.1), params)
    d = series(traj, params)
    n = traj.n_records
    for channel in (
        d.entropy,
        d.dissipation,
        d.sym_production,
        d.asym_production,
        d.entropy_rate_numeric,
    ):
        assert channel.shape == (n,)
    assert (d.dissipation >= 0).all()
    assert np.abs(d.sym_production + d.asym_production - d.dissipation).max() <= TOL_IDENTITY
    samples = d.samples
    assert len(samples) == n
    assert samples[3].entropy == d.entropy[3]


def test_consistency_report_isotropic_run(params):
    p = ModelParams(sigma=1.0)
    traj = simulate(SimConfig(t_final=0.1), p)
    rep = consistency_report(traj, p)
    d = series(traj, p)
    # with a vanishing corrector the balance channel IS the dissipation
    assert np.array_equal(rep.dissipation_balance, d.dissipation)
    assert rep.max_dev_algebraic <= 1e-10


def test_consistency_report_algebraic_channels_agree(params):
    traj = simulate(SimConfig(t_final=0.2), params)
    rep = consistency_report(traj, params)
    assert rep.max_dev_algebraic <= 1e-10
    assert rep.max_dev_numeric_sym < 0.1


def test_consistency_numeric_deviation_shrinks_with_recording_step(params):
    # interior samples use central differences: refining the recording step
    # by 2 shrinks the deviation about 4-fold; endpoints are first order
    coarse = consistency_report(simulate(SimConfig(t_final=0.2, record_stride=20), params), params)
    fine = consistency_report(simulate(SimConfig(t_final=0.2, record_stride=10), params), params)

    def interior_dev(rep):
        return np.abs(rep.numeric_rate - rep.sym_production)[1:-1].max()

    ratio = interior_dev(coarse) / interior_dev(fine)
    assert 2.8 <= ratio <= 5.5


def test_ratio_channel_isotropic_case():
    p = ModelParams(sigma=1.0)
    traj = simulate(SimConfig(t_final=0.05), p)
    d = series(traj, p)
    pairs = ratio_sa_over_d(d, d_floor=1e-4)
    assert pairs  # early transient clears the floor
    assert all(r == 0.0 for _, r in pairs)


def test_ratio_channel_filters_low_dissipation(params):
    traj = simulate(SimConfig(t_final=0.05), params)
    d = series(traj, params)
    assert ratio_sa_over_d(d, d_floor=1e6) == []
    pairs = ratio_sa_over_d(d, d_floor=1e-4)
    kept = {t for t, _ in pairs}
    for k in range(d.t.shape[0]):
        assert (d.t[k] in kept) == (d.dissipation[k] >= 1e-4)
