"""Batch command-line entry point.

Every subcommand reads one YAML config (all flags have config equivalents,
flags win), writes machine-readable CSV/JSON artifacts to --out-dir, echoes
the effective config for provenance, and finishes with a manifest.json of
artifact checksums. Output files are written atomically (temp + rename).

Exit codes: 0 success, 1 validation or parse error, 2 computation infeasible.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import tempfile
from pathlib import Path

from .demo import DEMO_OUTLIER_YEAR, demo_fleet
from .errors import (
    BoundarySolutionError,
    CalibrationInfeasibleError,
    DataFormatError,
    EmptyDistributionError,
    ValidationError,
)
from .experiments import (
    DISTRIBUTION_METRICS,
    calibrate_level,
    contributions_by_level,
    distributions_by_level,
    fixed_eeu_outcome,
    leave_one_out_eu,
)
from .fleet import build_capacity_distribution, load_fleet, save_fleet
from .indices import leave_one_out_indices, risk_indices
from .metrics import cvar_curve, histogram, summary
from .procurement import ProcurementProblem, ProcurementSolution, optimize_procurement, voll_sensitivity_sweep
from .runconfig import RunConfig, load_config
from .sequential import DAY_CSV_HEADER, OUTCOME_CSV_HEADER, eu_distribution, simulate
from .weather import generate_synthetic_dataset, load_dataset, save_dataset

SUBCOMMANDS = [
    "gen-data", "copt", "indices", "simulate", "cvar-curve", "distributions",
    "contributions", "leave-one-out", "calibrate", "optimize", "sweep",
    "experiment-fig1", "experiment-fig2", "experiment-fig3", "experiment-fig4",
    "serve",
]


class _Parser(argparse.ArgumentParser):
    # argparse defaults to exit code 2 on usage errors; the CLI contract is 1
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


class OutputWriter:
    """Atomic artifact writer that accumulates the run manifest."""

    def __init__(self, out_dir: str | os.PathLike):
        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self.artifacts: dict[str, Path] = {}

    def _finish(self, name: str, tmp: Path) -> Path:
        final = self.out_dir / name
        os.replace(tmp, final)
        self.artifacts[name] = final
        return final

    def write_text(self, name: str, content: str) -> Path:
        fd, tmp = tempfile.mkstemp(dir=self.out_dir, prefix=".tmp-")
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(content)
        return self._finish(name, Path(tmp))

    def write_csv(self, name: str, header: list[str], rows) -> Path:
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join(_csv_cell(c) for c in row))
        return self.write_text(name, "\n".join(lines) + "\n")

    def write_json(self, name: str, obj) -> Path:
        return self.write_text(name, json.dumps(obj, indent=2, sort_keys=True) + "\n")

    def write_manifest(self) -> Path:
        entries = []
        for name in sorted(self.artifacts):
            data = self.artifacts[name].read_bytes()
            entries.append(
                {"name": name, "bytes": len(data), "sha256": hashlib.sha256(data).hexdigest()}
            )
        return self.write_text(
            "manifest.json",
            json.dumps({"artifacts": entries}, indent=2, sort_keys=True) + "\n",
        )


def _csv_cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _gw_tag(gw: float) -> str:
    return f"w{gw:g}"


def _load_system(cfg: RunConfig):
    cfg.require_paths()
    fleet = load_fleet(cfg.fleet_path)
    dataset = load_dataset(cfg.demand_path, cfg.wind_path)
    return fleet, dataset


def _base_scenario(cfg: RunConfig, wind_gw: float):
    from .weather import ScenarioConfig

    return ScenarioConfig(
        target_acs_peak_mw=cfg.target_acs_peak_mw,
        wind_total_gw=wind_gw,
        season_hours=cfg.season_hours,
        onshore_fraction=cfg.onshore_fraction,
        demand_shift_mw=cfg.demand_shift_mw,
    )


def _calibrated_levels(cfg: RunConfig, fleet, dataset):
    return [
        calibrate_level(
            fleet, dataset, _base_scenario(cfg, gw), gw, cfg.target_eeu_mwh, cfg.resolution_mw
        )
        for gw in cfg.wind_gw
    ]


def _hist_rows(dist):
    edges, counts = histogram(dist)
    return [
        [float(edges[i]), float(edges[i + 1]), int(round(counts[i]))]
        for i in range(len(counts))
    ]


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen_data(cfg: RunConfig, writer: OutputWriter) -> int:
    dataset = generate_synthetic_dataset(
        cfg.seed, cfg.gen_n_years, cfg.gen_hours_per_year, cfg.gen_outlier_year
    )
    demand_tmp = writer.out_dir / ".demand.csv.part"
    wind_tmp = writer.out_dir / ".wind.csv.part"
    save_dataset(dataset, demand_tmp, wind_tmp)
    os.replace(demand_tmp, writer.out_dir / "demand.csv")
    os.replace(wind_tmp, writer.out_dir / "wind.csv")
    writer.artifacts["demand.csv"] = writer.out_dir / "demand.csv"
    writer.artifacts["wind.csv"] = writer.out_dir / "wind.csv"

    fleet_tmp = writer.out_dir / ".fleet.csv.part"
    save_fleet(demo_fleet(), fleet_tmp)
    os.replace(fleet_tmp, writer.out_dir / "fleet.csv")
    writer.artifacts["fleet.csv"] = writer.out_dir / "fleet.csv"
    return 0


def cmd_copt(cfg: RunConfig, writer: OutputWriter) -> int:
    cfg.require_paths()
    fleet = load_fleet(cfg.fleet_path)
    dist = build_capacity_distribution(fleet, cfg.resolution_mw)
    rows = [[level, prob] for level, prob in sorted(dist.probabilities.items())]
    writer.write_csv("copt.csv", ["capacity_mw", "probability"], rows)
    return 0


def cmd_indices(cfg: RunConfig, writer: OutputWriter) -> int:
    fleet, dataset = _load_system(cfg)
    for gw in cfg.wind_gw:
        idx = risk_indices(fleet, dataset, _base_scenario(cfg, gw), cfg.resolution_mw)
        writer.write_json(f"indices_{_gw_tag(gw)}.json", idx.to_json_dict())
    return 0


def cmd_simulate(cfg: RunConfig, writer: OutputWriter) -> int:
    fleet, dataset = _load_system(cfg)
    for i, gw in enumerate(cfg.wind_gw):
        outcome = simulate(
            fleet, dataset, _base_scenario(cfg, gw), cfg.n_replications, cfg.seed
        )
        tag = _gw_tag(gw)
        writer.write_csv(
            f"outcome_{tag}.csv",
            OUTCOME_CSV_HEADER,
            (
                [r_i, r.weather_year, r.lold_hours, r.eu_mwh, r.shortfall_days]
                for r_i, r in enumerate(outcome.replications)
            ),
        )
        writer.write_csv(
            f"days_{tag}.csv",
            DAY_CSV_HEADER,
            (
                [r_i, d_i, eu]
                for r_i, r in enumerate(outcome.replications)
                for d_i, eu in enumerate(r.eu_per_shortfall_day)
            ),
        )
    return 0


def cmd_cvar_curve(cfg: RunConfig, writer: OutputWriter) -> int:
    fleet, dataset = _load_system(cfg)
    for gw in cfg.wind_gw:
        outcome = simulate(
            fleet, dataset, _base_scenario(cfg, gw), cfg.n_replications, cfg.seed
        )
        curve = cvar_curve(eu_distribution(outcome), cfg.alphas)
        writer.write_csv(
            f"cvar_curve_{_gw_tag(gw)}.csv", ["alpha", "cvar_eu_mwh"], curve
        )
    return 0


def cmd_distributions(cfg: RunConfig, writer: OutputWriter) -> int:
    fleet, dataset = _load_system(cfg)
    for gw in cfg.wind_gw:
        outcome = simulate(
            fleet, dataset, _base_scenario(cfg, gw), cfg.n_replications, cfg.seed
        )
        by_metric = distributions_by_level({gw: outcome})[gw]
        for metric, dist in by_metric.items():
            writer.write_csv(
                f"hist_{metric}_{_gw_tag(gw)}.csv",
                ["bin_left", "bin_right", "count"],
                _hist_rows(dist),
            )
    return 0


def cmd_contributions(cfg: RunConfig, writer: OutputWriter) -> int:
    fleet, dataset = _load_system(cfg)
    rows = []
    for gw in cfg.wind_gw:
        idx = risk_indices(fleet, dataset, _base_scenario(cfg, gw), cfg.resolution_mw)
        from .indices import year_contributions

        for year, fraction in year_contributions(idx).items():
            rows.append([gw, year, fraction])
    writer.write_csv("contributions.csv", ["wind_gw", "year", "eeu_fraction"], rows)
    return 0


def cmd_leave_one_out(cfg: RunConfig, writer: OutputWriter) -> int:
    fleet, dataset = _load_system(cfg)
    excluded = cfg.excluded_years or [DEMO_OUTLIER_YEAR]
    for year in excluded:
        for gw in cfg.wind_gw:
            idx = leave_one_out_indices(
                fleet, dataset, _base_scenario(cfg, gw), year, cfg.resolution_mw
            )
            writer.write_json(f"loo_{year}_{_gw_tag(gw)}.json", idx.to_json_dict())
    return 0


def cmd_calibrate(cfg: RunConfig, writer: OutputWriter) -> int:
    fleet, dataset = _load_system(cfg)
    levels = _calibrated_levels(cfg, fleet, dataset)
    writer.write_csv(
        "calibration.csv",
        ["wind_gw", "shift_mw", "eeu_mwh"],
        ([lv.wind_gw, lv.calibration.shift_mw, lv.calibration.eeu_mwh] for lv in levels),
    )
    return 0


def cmd_optimize(cfg: RunConfig, writer: OutputWriter) -> int:
    fleet, dataset = _load_system(cfg)
    rows = []
    for gw in cfg.wind_gw:
        problem = ProcurementProblem(
            cone_per_mw_year=cfg.cone_per_mw_year,
            voll_per_mwh=cfg.voll_per_mwh,
            fleet=fleet,
            dataset=dataset,
            scenario=_base_scenario(cfg, gw),
            resolution_mw=cfg.resolution_mw,
        )
        sol = optimize_procurement(problem)
        rows.append(
            [gw, cfg.cone_per_mw_year, cfg.voll_per_mwh, sol.r_star_mw,
             sol.lole_at_r_star, sol.eeu_at_r_star, sol.total_cost]
        )
    writer.write_csv(
        "optimize.csv",
        ["wind_gw", "cone", "voll", "r_star_mw", "lole_hours", "eeu_mwh", "total_cost"],
        rows,
    )
    return 0


def cmd_sweep(cfg: RunConfig, writer: OutputWriter) -> int:
    fleet, dataset = _load_system(cfg)
    for gw in cfg.wind_gw:
        problem = ProcurementProblem(
            cone_per_mw_year=cfg.cone_per_mw_year,
            voll_per_mwh=cfg.voll_per_mwh,
            fleet=fleet,
            dataset=dataset,
            scenario=_base_scenario(cfg, gw),
            resolution_mw=cfg.resolution_mw,
        )
        rows = []
        for voll, result in voll_sensitivity_sweep(problem, cfg.voll_sweep):
            if isinstance(result, ProcurementSolution):
                rows.append(
                    [voll, cfg.cone_per_mw_year, result.r_star_mw,
                     result.lole_at_r_star, result.eeu_at_r_star, result.total_cost]
                )
            else:
                print(f"sweep: VOLL {voll:g}: {result}", file=sys.stderr)
                rows.append([voll, cfg.cone_per_mw_year, "", "", "", ""])
        writer.write_csv(
            f"sweep_{_gw_tag(gw)}.csv",
            ["voll", "cone", "r_star_mw", "lole_hours", "eeu_mwh", "total_cost"],
            rows,
        )
    return 0


def _write_calibration(writer, levels):
    writer.write_csv(
        "calibration.csv",
        ["wind_gw", "shift_mw", "eeu_mwh"],
        ([lv.wind_gw, lv.calibration.shift_mw, lv.calibration.eeu_mwh] for lv in levels),
    )


def cmd_experiment_fig1(cfg: RunConfig, writer: OutputWriter) -> int:
    """Calibrated CVaR-vs-alpha curves per wind level."""
    fleet, dataset = _load_system(cfg)
    levels = _calibrated_levels(cfg, fleet, dataset)
    _write_calibration(writer, levels)
    rows = []
    for i, level in enumerate(levels):
        outcome = fixed_eeu_outcome(fleet, dataset, level, cfg.n_replications, cfg.seed, i)
        for alpha, value in cvar_curve(eu_distribution(outcome), cfg.alphas):
            rows.append([level.wind_gw, alpha, value])
    writer.write_csv("cvar_curves.csv", ["wind_gw", "alpha", "cvar_eu_mwh"], rows)
    return 0


def cmd_experiment_fig2(cfg: RunConfig, writer: OutputWriter) -> int:
    """Fixed-EEU outcome histograms (four metrics) per wind level."""
    fleet, dataset = _load_system(cfg)
    levels = _calibrated_levels(cfg, fleet, dataset)
    _write_calibration(writer, levels)
    outcomes = {
        level.wind_gw: fixed_eeu_outcome(fleet, dataset, level, cfg.n_replications, cfg.seed, i)
        for i, level in enumerate(levels)
    }
    for gw, dists in distributions_by_level(outcomes).items():
        for metric in DISTRIBUTION_METRICS:
            if metric not in dists:
                print(
                    f"experiment-fig2: no samples for {metric} at {gw:g} GW", file=sys.stderr
                )
                continue
            writer.write_csv(
                f"hist_{metric}_{_gw_tag(gw)}.csv",
                ["bin_left", "bin_right", "count"],
                _hist_rows(dists[metric]),
            )
    return 0


def cmd_experiment_fig3(cfg: RunConfig, writer: OutputWriter) -> int:
    """Per-year EEU contribution fractions across calibrated wind levels."""
    fleet, dataset = _load_system(cfg)
    levels = _calibrated_levels(cfg, fleet, dataset)
    _write_calibration(writer, levels)
    rows = []
    for gw, fractions in contributions_by_level(fleet, dataset, levels).items():
        for year, fraction in fractions.items():
            rows.append([gw, year, fraction])
    writer.write_csv("contributions.csv", ["wind_gw", "year", "eeu_fraction"], rows)
    return 0


def cmd_experiment_fig4(cfg: RunConfig, writer: OutputWriter) -> int:
    """EU distribution with and without the outlier year, per wind level."""
    fleet, dataset = _load_system(cfg)
    excluded = (cfg.excluded_years or [DEMO_OUTLIER_YEAR])[0]
    levels = _calibrated_levels(cfg, fleet, dataset)
    _write_calibration(writer, levels)
    rows = []
    for i, level in enumerate(levels):
        gw = level.wind_gw
        full = eu_distribution(
            fixed_eeu_outcome(fleet, dataset, level, cfg.n_replications, cfg.seed, i)
        )
        _, loo_outcome = leave_one_out_eu(
            fleet, dataset, _base_scenario(cfg, gw), gw, cfg.target_eeu_mwh,
            excluded, cfg.n_replications, cfg.seed, i, cfg.resolution_mw,
        )
        loo = eu_distribution(loo_outcome)
        for variant, dist in (("full", full), (f"without_{excluded}", loo)):
            s = summary(dist)
            rows.append(
                [gw, variant, s["mean"], s["quantiles"][0.5], s["quantiles"][0.9],
                 s["quantiles"][0.95], s["quantiles"][0.99]]
            )
            writer.write_csv(
                f"hist_eu_{variant}_{_gw_tag(gw)}.csv",
                ["bin_left", "bin_right", "count"],
                _hist_rows(dist),
            )
    writer.write_csv(
        "eu_quantiles.csv",
        ["wind_gw", "variant", "mean_mwh", "q50_mwh", "q90_mwh", "q95_mwh", "q99_mwh"],
        rows,
    )
    return 0


def cmd_serve(cfg: RunConfig, writer: OutputWriter, args) -> int:
    import uvicorn

    from .service import create_app

    cfg.require_paths()
    listen = args.listen or os.environ.get("ADEQUACY_LISTEN", "127.0.0.1:8080")
    host, _, port = listen.rpartition(":")
    workers = int(os.environ.get("ADEQUACY_WORKERS", "2"))
    app = create_app(
        cfg,
        data_dir=os.environ.get("ADEQUACY_DATA_DIR", str(writer.out_dir)),
        n_workers=workers,
        static_dir=os.environ.get("ADEQUACY_STATIC_DIR"),
    )
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))
    return 0


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def _build_parser() -> _Parser:
    parser = _Parser(prog="adequacy", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND")
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", default=None, help="YAML config file")
        p.add_argument("--out-dir", default=None, help="output directory")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--wind-gw", default=None, help="comma-separated GW levels")
        p.add_argument("--alpha", default=None, help="comma-separated CVaR levels in [0,1)")
        p.add_argument("--reps", type=int, default=None, help="Monte Carlo replications")
        p.add_argument("--target-eeu-mwh", type=float, default=None)
        p.add_argument("--cone", type=float, default=None, help="cost of new entry per MW-year")
        p.add_argument("--voll", default=None,
                       help="value of lost load per MWh; comma-separated list for sweep")
        p.add_argument("--exclude-year", action="append", default=None, metavar="LABEL")
        if name == "serve":
            p.add_argument("--listen", default=None, help="host:port (default 127.0.0.1:8080)")
    return parser


def _parse_float_list(raw: str, flag: str) -> list[float]:
    try:
        return [float(x) for x in raw.split(",") if x.strip()]
    except ValueError:
        raise ValidationError(f"{flag}: expected comma-separated numbers, got {raw!r}") from None


def _apply_flags(cfg: RunConfig, args) -> RunConfig:
    if args.out_dir is not None:
        cfg.out_dir = args.out_dir
    if args.seed is not None:
        cfg.seed = args.seed
    if args.wind_gw is not None:
        cfg.wind_gw = _parse_float_list(args.wind_gw, "--wind-gw")
    if args.alpha is not None:
        cfg.alphas = _parse_float_list(args.alpha, "--alpha")
    if args.reps is not None:
        cfg.n_replications = args.reps
    if args.target_eeu_mwh is not None:
        cfg.target_eeu_mwh = args.target_eeu_mwh
    if args.cone is not None:
        cfg.cone_per_mw_year = args.cone
    if args.voll is not None:
        values = _parse_float_list(args.voll, "--voll")
        cfg.voll_per_mwh = values[0]
        if len(values) > 1:
            cfg.voll_sweep = values
    if args.exclude_year:
        cfg.excluded_years = list(args.exclude_year)
    return cfg


_DISPATCH = {
    "gen-data": cmd_gen_data,
    "copt": cmd_copt,
    "indices": cmd_indices,
    "simulate": cmd_simulate,
    "cvar-curve": cmd_cvar_curve,
    "distributions": cmd_distributions,
    "contributions": cmd_contributions,
    "leave-one-out": cmd_leave_one_out,
    "calibrate": cmd_calibrate,
    "optimize": cmd_optimize,
    "sweep": cmd_sweep,
    "experiment-fig1": cmd_experiment_fig1,
    "experiment-fig2": cmd_experiment_fig2,
    "experiment-fig3": cmd_experiment_fig3,
    "experiment-fig4": cmd_experiment_fig4,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.subcommand is None:
        parser.print_usage(sys.stderr)
        sys.stderr.write("adequacy: error: a subcommand is required\n")
        return 1
    try:
        cfg = load_config(args.config)
        cfg = _apply_flags(cfg, args)
        cfg.validate()
        writer = OutputWriter(cfg.out_dir)
        if args.subcommand == "serve":
            return cmd_serve(cfg, writer, args)
        status = _DISPATCH[args.subcommand](cfg, writer)
        writer.write_text("config_effective.yaml", cfg.to_yaml())
        writer.write_manifest()
        return status
    except (ValidationError, DataFormatError, EmptyDistributionError) as exc:
        print(f"adequacy {args.subcommand}: {exc}", file=sys.stderr)
        return 1
    except (CalibrationInfeasibleError, BoundarySolutionError) as exc:
        print(f"adequacy {args.subcommand}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
