"""CSV emission and plot-script generation.

Numbers are written with 17 significant digits so every double round-trips
exactly.  Plot scripts are plain gnuplot text referencing the emitted CSVs;
nothing is rendered in-process.
"""
from __future__ import annotations

from pathlib import Path

from .config import RunMetadata, metadata_text
from .diagnostics import DiagnosticsSeries
from .ensemble import EnsembleStats

__all__ = [
    "RUN_HEADER",
    "ENSEMBLE_HEADER",
    "emit_run_csv",
    "emit_ensemble_csv",
    "write_run_plot_scripts",
    "write_ensemble_plot_scripts",
]

RUN_HEADER = "t,S,D,s_s,s_a,dSdt_num,sa_over_D"
ENSEMBLE_HEADER = "t,Dsa_min,Dsa_mean,Dsa_max,S_mean,S_min,S_max,limit_spread"


def _num(v: float) -> str:
    return f"{v:.17g}"


def _sidecar(path: Path) -> Path:
    return path.with_name(path.stem + ".meta.txt")


def emit_run_csv(
    d: DiagnosticsSeries,
    path: str | Path,
    d_floor: float = 1e-4,
    metadata: RunMetadata | None = None,
) -> Path:
    """Write one row per recorded instant; the ratio column is empty below the floor."""
    path = Path(path)
    rows = [RUN_HEADER]
    for k in range(d.t.shape[0]):
        ratio = (
            _num(d.asym_production[k] / d.dissipation[k])
            if d.dissipation[k] >= d_floor
            else ""
        )
        rows.append(
            ",".join(
                (
                    _num(d.t[k]),
                    _num(d.entropy[k]),
                    _num(d.dissipation[k]),
                    _num(d.sym_production[k]),
                    _num(d.asym_production[k]),
                    _num(d.entropy_rate_numeric[k]),
                    ratio,
                )
            )
        )
    path.write_text("\n".join(rows) + "\n")
    if metadata is not None:
        _sidecar(path).write_text(metadata_text(metadata))
    return path


def emit_ensemble_csv(
    stats: EnsembleStats,
    path: str | Path,
    metadata: RunMetadata | None = None,
) -> Path:
    """Write the per-time envelope channels of an ensemble."""
    path = Path(path)
    rows = [ENSEMBLE_HEADER]
    for k in range(stats.times.shape[0]):
        rows.append(
            ",".join(
                _num(v)
                for v in (
                    stats.times[k],
                    stats.rate_min[k],
                    stats.rate_mean[k],
                    stats.rate_max[k],
                    stats.entropy_mean[k],
                    stats.entropy_min[k],
                    stats.entropy_max[k],
                    stats.limit_spread[k],
                )
            )
        )
    path.write_text("\n".join(rows) + "\n")
    if metadata is not None:
        _sidecar(path).write_text(metadata_text(metadata))
    return path


def _gp(outdir: Path, name: str, title: str, ylabel: str, plot: str) -> None:
    text = (
        f"# gnuplot script: {title}\n"
        "set datafile separator ','\n"
        "set key autotitle columnhead\n"
        "set terminal pngcairo size 900,600\n"
        f"set output '{name}.png'\n"
        "set xlabel 't'\n"
        f"set ylabel '{ylabel}'\n"
        f"set title '{title}'\n"
        f"plot {plot}\n"
    )
    (outdir / f"{name}.gp").write_text(text)


def write_run_plot_scripts(outdir: str | Path, csv_name: str = "run.csv") -> list[Path]:
    """Emit the four single-run figures as gnuplot scripts next to the CSV."""
    outdir = Path(outdir)
    _gp(
        outdir,
        "fig1_rate_channels",
        "entropy rate, three ways (single run)",
        "rate",
        f"'{csv_name}' using 1:4 with lines title 's_s', "
        f"'{csv_name}' using 1:6 with lines title 'dS/dt (numeric)', "
        f"'{csv_name}' using 1:($3-$5) with lines title 'D - s_a'",
    )
    _gp(
        outdir,
        "fig2_dissipation",
        "dissipation (single run)",
        "D",
        f"'{csv_name}' using 1:3 with lines title 'D'",
    )
    _gp(
        outdir,
        "fig3_corrector_ratio",
        "corrector-to-dissipation ratio (single run)",
        "s_a / D",
        f"'{csv_name}' using 1:7 with lines title 's_a / D'",
    )
    _gp(
        outdir,
        "fig4_entropy",
        "entropy (single run)",
        "S",
        f"'{csv_name}' using 1:2 with lines title 'S'",
    )
    return sorted(outdir.glob("fig*.gp"))


def write_ensemble_plot_scripts(
    outdir: str | Path, csv_name: str = "ensemble.csv"
) -> list[Path]:
    """Emit the two ensemble figures as gnuplot scripts next to the CSV."""
    outdir = Path(outdir)
    _gp(
        outdir,
        "fig5_rate_envelope",
        "entropy-rate envelope over runs",
        "D - s_a",
        f"'{csv_name}' using 1:2 with lines title 'min over runs', "
        f"'{csv_name}' using 1:4 with lines title 'max over runs'",
    )
    _gp(
        outdir,
        "fig6_entropy_mean",
        "ensemble-mean entropy",
        "mean S",
        f"'{csv_name}' using 1:5 with lines title 'mean S'",
    )
    return sorted(outdir.glob("fig*.gp"))
