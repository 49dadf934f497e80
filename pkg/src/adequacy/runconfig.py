"""Run configuration: a single YAML document plus flag overrides.

Every CLI flag has a config-file equivalent; flags win. Paths inside a config
file are resolved relative to the file, flag paths relative to the working
directory. The effective merged config is echoed into the output directory
for provenance.
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict
from pathlib import Path

import yaml

from .demo import (
    DEMO_HOURS_PER_YEAR,
    DEMO_N_YEARS,
    DEMO_ONSHORE_FRACTION,
    DEMO_SEED,
    DEMO_TARGET_ACS_MW,
    DEMO_TARGET_EEU_MWH,
    DEMO_WIND_LEVELS_GW,
)
from .errors import ValidationError

__all__ = ["RunConfig", "load_config"]

DEFAULT_ALPHAS = [round(0.05 * i, 2) for i in range(20)]  # 0.00 .. 0.95
DEFAULT_VOLL_SWEEP = [10000.0, 20000.0, 40000.0, 80000.0]


@dataclass
class RunConfig:
    # paths
    fleet_path: str | None = None
    demand_path: str | None = None
    wind_path: str | None = None
    out_dir: str = "out"
    # scenario
    target_acs_peak_mw: float = DEMO_TARGET_ACS_MW
    wind_gw: list[float] = field(default_factory=lambda: list(DEMO_WIND_LEVELS_GW))
    onshore_fraction: float = DEMO_ONSHORE_FRACTION
    season_hours: int = DEMO_HOURS_PER_YEAR
    demand_shift_mw: float = 0.0
    # analysis
    target_eeu_mwh: float = DEMO_TARGET_EEU_MWH
    alphas: list[float] = field(default_factory=lambda: list(DEFAULT_ALPHAS))
    n_replications: int = 2000
    seed: int = DEMO_SEED
    cone_per_mw_year: float = 60000.0
    voll_per_mwh: float = 20000.0
    voll_sweep: list[float] = field(default_factory=lambda: list(DEFAULT_VOLL_SWEEP))
    excluded_years: list[str] = field(default_factory=list)
    resolution_mw: float = 1.0
    # synthetic data generation
    gen_n_years: int = DEMO_N_YEARS
    gen_hours_per_year: int = DEMO_HOURS_PER_YEAR
    gen_outlier_year: bool = True

    def validate(self) -> None:
        if self.n_replications < 1:
            raise ValidationError("n_replications must be >= 1")
        for a in self.alphas:
            if not 0.0 <= float(a) < 1.0:
                raise ValidationError(f"alpha {a} outside [0, 1)")
        if not self.wind_gw:
            raise ValidationError("wind_gw must list at least one level")
        for g in self.wind_gw:
            if float(g) < 0:
                raise ValidationError(f"wind level {g} must be >= 0")
        if self.resolution_mw <= 0:
            raise ValidationError("resolution_mw must be > 0")

    def require_paths(self) -> None:
        for name in ("fleet_path", "demand_path", "wind_path"):
            value = getattr(self, name)
            if value is None:
                raise ValidationError(
                    f"{name.removesuffix('_path')} file not configured (set paths.{name.removesuffix('_path')} "
                    f"in the config file)"
                )
            if not Path(value).is_file():
                raise ValidationError(f"{name.removesuffix('_path')} file not found: {value}")

    def to_yaml(self) -> str:
        cfg = asdict(self)
        doc = {
            "paths": {
                "fleet": cfg["fleet_path"],
                "demand": cfg["demand_path"],
                "wind": cfg["wind_path"],
            },
            "output": {"dir": cfg["out_dir"]},
            "scenario": {
                k: cfg[k]
                for k in (
                    "target_acs_peak_mw", "wind_gw", "onshore_fraction",
                    "season_hours", "demand_shift_mw",
                )
            },
            "analysis": {
                k: cfg[k]
                for k in (
                    "target_eeu_mwh", "alphas", "n_replications", "seed",
                    "cone_per_mw_year", "voll_per_mwh", "voll_sweep",
                    "excluded_years", "resolution_mw",
                )
            },
            "gen": {
                "n_years": cfg["gen_n_years"],
                "hours_per_year": cfg["gen_hours_per_year"],
                "outlier_year": cfg["gen_outlier_year"],
            },
        }
        return yaml.safe_dump(doc, sort_keys=True)


_SECTION_FIELDS = {
    "scenario": {
        "target_acs_peak_mw": float,
        "wind_gw": list,
        "onshore_fraction": float,
        "season_hours": int,
        "demand_shift_mw": float,
    },
    "analysis": {
        "target_eeu_mwh": float,
        "alphas": list,
        "n_replications": int,
        "seed": int,
        "cone_per_mw_year": float,
        "voll_per_mwh": float,
        "voll_sweep": list,
        "excluded_years": list,
        "resolution_mw": float,
    },
}


def load_config(config_path: str | None) -> RunConfig:
    """Parse the YAML config into a RunConfig; missing keys keep defaults."""
    cfg = RunConfig()
    if config_path is None:
        return cfg
    path = Path(config_path)
    if not path.is_file():
        raise ValidationError(f"config file not found: {config_path}")
    try:
        doc = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except yaml.YAMLError as exc:
        raise ValidationError(f"{config_path}: not valid YAML: {exc}") from None
    if not isinstance(doc, dict):
        raise ValidationError(f"{config_path}: top level must be a mapping")

    base = path.parent

    def resolve(p):
        return str((base / p).resolve()) if p is not None else None

    paths = doc.get("paths", {}) or {}
    cfg.fleet_path = resolve(paths.get("fleet"))
    cfg.demand_path = resolve(paths.get("demand"))
    cfg.wind_path = resolve(paths.get("wind"))
    output = doc.get("output", {}) or {}
    if output.get("dir") is not None:
        cfg.out_dir = str(base / output["dir"])

    for section, fields_ in _SECTION_FIELDS.items():
        data = doc.get(section, {}) or {}
        for key, cast in fields_.items():
            if key in data and data[key] is not None:
                try:
                    value = data[key]
                    if cast is list:
                        value = list(value)
                    else:
                        value = cast(value)
                except (TypeError, ValueError):
                    raise ValidationError(
                        f"{config_path}: {section}.{key} has invalid value {data[key]!r}"
                    ) from None
                setattr(cfg, key, value)
    gen = doc.get("gen", {}) or {}
    if "n_years" in gen:
        cfg.gen_n_years = int(gen["n_years"])
    if "hours_per_year" in gen:
        cfg.gen_hours_per_year = int(gen["hours_per_year"])
    if "outlier_year" in gen:
        cfg.gen_outlier_year = bool(gen["outlier_year"])
    cfg.excluded_years = [str(y) for y in cfg.excluded_years]
    return cfg
