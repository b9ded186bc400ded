import numpy as np
import pytest

from crowdtherm import ModelParams, SimConfig, numeric_derivative, series, simulate
from crowdtherm.config import (
    ConfigError,
    RunMetadata,
    config_text,
    metadata_text,
    parse_config,
    parse_pairs,
)
from crowdtherm.output import (
    ENSEMBLE_HEADER,
    RUN_HEADER,
    emit_ensemble_csv,
    emit_run_csv,
    write_ensemble_plot_scripts,
    write_run_plot_scripts,
)
from crowdtherm.ensemble import run_ensemble


def test_empty_text_gives_full_defaults():
    params, config = parse_config("")
    assert params.morse.C_a == 1.0
    assert params.morse.C_r == 2.0
    assert params.morse.l_a == 2.0
    assert params.morse.l_r == 0.5
    assert params.sigma == 0.5
    assert (params.v_d.x, params.v_d.y) == (1.0, 0.0)
    assert params.mass_weight == pytest.approx(1.0 / 25.0)
    assert config.n_particles == 25
    assert config.dt == 1e-3
    assert config.t_final == 1.0
    assert config.record_stride == 10
    assert config.seed == 0
    assert config.d_floor == 1e-4


def test_comments_and_blank_lines_are_ignored():
    params, _ = parse_config("# a comment\n\nsigma = 0.25  # trailing note\n")
    assert params.sigma == 0.25


def test_sigma_constraint_violation_names_sigma():
    with pytest.raises(ConfigError, match="sigma"):
        parse_config("sigma = 1.5\n")


def test_length_ordering_violation_from_partial_override():
    with pytest.raises(ConfigError, match="l_r < l_a"):
        parse_config("l_r = 3.0\n")


def test_unknown_key_rejected_by_name():
    with pytest.raises(ConfigError, match="unknown key 'velocity'"):
        parse_pairs("velocity = 3\n")


def test_malformed_line_reports_its_number():
    with pytest.raises(ConfigError, match="line 2"):
        parse_pairs("sigma = 0.5\nnot a pair\n")


def test_bad_value_types_are_rejected():
    with pytest.raises(ConfigError, match="n must be an integer"):
        parse_pairs("n = 2.5\n")
    with pytest.raises(ConfigError, match="sigma must be a number"):
        parse_pairs("sigma = big\n")


def test_nonfinite_values_are_rejected():
    with pytest.raises(ConfigError, match="v_d_x must be finite"):
        parse_pairs("v_d_x = inf\n")
    with pytest.raises(ConfigError, match="dt must be finite"):
        parse_pairs("dt = nan\n")


def test_duplicate_keys_are_rejected():
    with pytest.raises(ConfigError, match="duplicate key 'sigma'"):
        parse_pairs("sigma = 0.5\nsigma = 0.6\n")


def test_all_problems_reported_together():
    with pytest.raises(ConfigError) as err:
        parse_pairs("bogus = 1\nn = x\n")
    assert len(err.value.problems) == 2


def test_mass_weight_defaults_to_one_over_n():
    params, _ = parse_config("n = 50\n")
    assert params.mass_weight == pytest.approx(0.02)
    params, _ = parse_config("n = 50\nmass_weight = 1.0\n")
    assert params.mass_weight == 1.0


def test_config_round_trip():
    params, config = parse_config("sigma = 0.25\nn = 7\nseed = 99\ndt = 2e-3\n")
    reparsed_params, reparsed_config = parse_config(config_text(params, config))
    assert reparsed_params == params
    assert reparsed_config == config


def _meta(params, config, n_runs=None):
    return RunMetadata(
        params=params,
        config=config,
        scheme="rk4-classic",
        generator="numpy-pcg64",
        version="0.1.0",
        duration_s=1.25,
        n_runs=n_runs,
    )


def test_metadata_text_reparses_and_names_the_machinery(params, config):
    text = metadata_text(_meta(params, config, n_runs=10))
    for needle in ("scheme = rk4-classic", "rng = numpy-pcg64", "version = 0.1.0", "duration_s", "n_runs = 10", "run_seeds = 0..9"):
        assert needle in text
    reparsed_params, reparsed_config = parse_config(text)
    assert reparsed_params == params
    assert reparsed_config == config


def test_run_csv_layout_and_sidecar(tmp_path, params):
    cfg = SimConfig(dt=1e-3, t_final=1e-3, record_stride=1)
    d = series(simulate(cfg, params), params)
    path = emit_run_csv(d, tmp_path / "run.csv", d_floor=cfg.d_floor, metadata=_meta(params, cfg))
    lines = path.read_text().strip().split("\n")
    assert lines[0] == RUN_HEADER
    assert len(lines) == 3  # header + 2 records
    assert (tmp_path / "run.meta.txt").exists()
    parse_config((tmp_path / "run.meta.txt").read_text())


def test_run_csv_isotropic_corrector_column_is_zero(tmp_path):
    p = ModelParams(sigma=1.0)
    cfg = SimConfig(t_final=0.02)
    d = series(simulate(cfg, p), p)
    path = emit_run_csv(d, tmp_path / "run.csv")
    rows = [line.split(",") for line in path.read_text().strip().split("\n")[1:]]
    assert all(float(r[4]) == 0.0 for r in rows)


def test_run_csv_round_trips_the_numeric_rate(tmp_path, params):
    cfg = SimConfig(t_final=0.05)
    d = series(simulate(cfg, params), params)
    path = emit_run_csv(d, tmp_path / "run.csv", d_floor=cfg.d_floor)
    rows = [line.split(",") for line in path.read_text().strip().split("\n")[1:]]
    t = np.array([float(r[0]) for r in rows])
    ent = np.array([float(r[1]) for r in rows])
    rate = np.array([float(r[5]) for r in rows])
    assert np.abs(numeric_derivative(t, ent) - rate).max() <= 1e-12


def test_run_csv_ratio_cell_empty_below_the_floor(tmp_path, params):
    cfg = SimConfig(t_final=0.05)
    d = series(simulate(cfg, params), params)
    path = emit_run_csv(d, tmp_path / "run.csv", d_floor=1e9)
    rows = [line.split(",") for line in path.read_text().strip().split("\n")[1:]]
    assert all(r[6] == "" for r in rows)


def test_ensemble_csv_layout(tmp_path, params):
    stats = run_ensemble(1, SimConfig(t_final=0.02), params)
    path = emit_ensemble_csv(stats, tmp_path / "ensemble.csv", metadata=_meta(params, SimConfig(), 1))
    lines = path.read_text().strip().split("\n")
    assert lines[0] == ENSEMBLE_HEADER
    assert len(lines) == 1 + stats.times.shape[0]
    rows = [line.split(",") for line in lines[1:]]
    for r in rows:
        assert float(r[1]) == float(r[2]) == float(r[3])  # single run: min=mean=max
        assert float(r[7]) >= 0.0
    assert (tmp_path / "ensemble.meta.txt").exists()


def test_plot_scripts_reference_the_csv(tmp_path):
    run_scripts = write_run_plot_scripts(tmp_path)
    names = {p.name for p in run_scripts}
    assert names == {
        "fig1_rate_channels.gp",
        "fig2_dissipation.gp",
        "fig3_corrector_ratio.gp",
        "fig4_entropy.gp",
    }
    assert all("run.csv" in p.read_text() for p in run_scripts)

    ens_dir = tmp_path / "ens"
    ens_dir.mkdir()
    ens_scripts = write_ensemble_plot_scripts(ens_dir)
    assert {p.name for p in ens_scripts} == {"fig5_rate_envelope.gp", "fig6_entropy_mean.gp"}
    assert all("ensemble.csv" in p.read_text() for p in ens_scripts)
