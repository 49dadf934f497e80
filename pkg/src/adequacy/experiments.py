"""Controlled fixed-EEU experiments across installed wind levels.

Each experiment compares scenarios of different installed wind capacity after
shifting every scenario's supply-demand balance to a common target EEU, so
differences in the outcome distributions are changes of risk *profile*, not
of headline risk level. The leave-one-out variant recalibrates on the reduced
dataset and simulates the reduced dataset, mirroring how an analyst would
rerun a study without a suspect year.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptyDistributionError
from .fleet import Fleet
from .indices import risk_indices, year_contributions
from .metrics import EmpiricalDistribution, cvar_curve, summary
from .procurement import CalibrationResult, RiskCurves, calibrate_to_target_eeu
from .seeding import derive_seed
from .sequential import (
    SimulationOutcome,
    eu_distribution,
    eu_within_day_distribution,
    lold_distribution,
    shortfall_days_distribution,
    simulate,
)
from .weather import ScenarioConfig, WeatherDataset

__all__ = [
    "CalibratedLevel",
    "calibrate_level",
    "fixed_eeu_outcome",
    "cvar_curves_by_level",
    "distributions_by_level",
    "contributions_by_level",
    "leave_one_out_eu",
    "DISTRIBUTION_METRICS",
]

DISTRIBUTION_METRICS = ("lold", "eu", "shortfall_days", "eu_within_day")

_EXTRACTORS = {
    "lold": lold_distribution,
    "eu": eu_distribution,
    "shortfall_days": shortfall_days_distribution,
    "eu_within_day": eu_within_day_distribution,
}

METRIC_UNITS = {
    "lold": "hours",
    "eu": "mwh",
    "shortfall_days": "days",
    "eu_within_day": "mwh",
}


@dataclass(frozen=True)
class CalibratedLevel:
    """One wind level calibrated to the common EEU target."""

    wind_gw: float
    scenario: ScenarioConfig  # carries the calibrated shift
    calibration: CalibrationResult
    curves: RiskCurves


def calibrate_level(
    fleet: Fleet,
    dataset: WeatherDataset,
    base_scenario: ScenarioConfig,
    wind_gw: float,
    target_eeu_mwh: float,
    resolution_mw: float = 1.0,
) -> CalibratedLevel:
    scenario = base_scenario.with_wind(wind_gw).with_shift(0.0)
    curves = RiskCurves(fleet, dataset, scenario, resolution_mw)
    cal = calibrate_to_target_eeu(
        fleet, dataset, scenario, target_eeu_mwh, resolution_mw=resolution_mw, curves=curves
    )
    return CalibratedLevel(
        wind_gw=wind_gw,
        scenario=scenario.with_shift(cal.shift_mw),
        calibration=cal,
        curves=curves,
    )


def fixed_eeu_outcome(
    fleet: Fleet,
    dataset: WeatherDataset,
    level: CalibratedLevel,
    n_replications: int,
    seed: int,
    level_index: int,
) -> SimulationOutcome:
    """Sequential run of a calibrated level; sub-seeded per level."""
    return simulate(
        fleet, dataset, level.scenario, n_replications, derive_seed(seed, level_index)
    )


def cvar_curves_by_level(
    outcomes: dict[float, SimulationOutcome], alphas
) -> dict[float, list[tuple[float, float]]]:
    """CVaR of the EU distribution per wind level over the alpha grid."""
    return {gw: cvar_curve(eu_distribution(out), alphas) for gw, out in outcomes.items()}


def distributions_by_level(
    outcomes: dict[float, SimulationOutcome]
) -> dict[float, dict[str, EmpiricalDistribution]]:
    """The four outcome distributions per wind level.

    A metric with no samples (no shortfall day anywhere) is omitted for that
    level rather than raising.
    """
    result: dict[float, dict[str, EmpiricalDistribution]] = {}
    for gw, out in outcomes.items():
        dists = {}
        for metric in DISTRIBUTION_METRICS:
            try:
                dists[metric] = _EXTRACTORS[metric](out)
            except EmptyDistributionError:
                continue
        result[gw] = dists
    return result


def contributions_by_level(
    fleet: Fleet,
    dataset: WeatherDataset,
    levels: list[CalibratedLevel],
) -> dict[float, dict[str, float]]:
    """Per-year EEU contribution fractions at each calibrated wind level."""
    out = {}
    for level in levels:
        idx = risk_indices(
            fleet, dataset, level.scenario, capdist=level.curves.capdist
        )
        out[level.wind_gw] = year_contributions(idx)
    return out


def leave_one_out_eu(
    fleet: Fleet,
    dataset: WeatherDataset,
    base_scenario: ScenarioConfig,
    wind_gw: float,
    target_eeu_mwh: float,
    excluded_year: str,
    n_replications: int,
    seed: int,
    level_index: int,
    resolution_mw: float = 1.0,
) -> tuple[CalibratedLevel, SimulationOutcome]:
    """Recalibrate and simulate with one weather year left out."""
    reduced = dataset.without(excluded_year)
    level = calibrate_level(
        fleet, reduced, base_scenario, wind_gw, target_eeu_mwh, resolution_mw
    )
    outcome = simulate(
        fleet, reduced, level.scenario, n_replications, derive_seed(seed, level_index, 1)
    )
    return level, outcome


def distribution_summary(dist: EmpiricalDistribution) -> dict:
    return summary(dist)
