"""Analytic (time-collapsed / hindcast) risk indices.

Everything here reduces to two per-hour primitives against the fleet's
capacity distribution: the probability of shortfall (capacity strictly below
net demand) and the expected shortfall depth. A shortfall requires capacity
strictly below demand; exact ties are not shortfalls, which matters because
grid rounding makes ties reachable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .fleet import CapacityDistribution, Fleet, build_capacity_distribution
from .weather import ScenarioConfig, WeatherDataset, net_demand

__all__ = [
    "RiskIndices",
    "lolp",
    "epu",
    "lole_year",
    "eeu_year",
    "risk_indices",
    "year_contributions",
    "leave_one_out_indices",
]


@dataclass(frozen=True)
class RiskIndices:
    """Aggregate and per-year LOLE/EEU; aggregates are unweighted year means."""

    lole_hours_per_period: float
    eeu_mwh_per_period: float
    per_year: dict[str, tuple[float, float]]  # label -> (lole_hours, eeu_mwh)

    def to_json_dict(self) -> dict:
        return {
            "aggregate": {
                "lole_hours": self.lole_hours_per_period,
                "eeu_mwh": self.eeu_mwh_per_period,
            },
            "per_year": [
                {"year": label, "lole_hours": lole, "eeu_mwh": eeu}
                for label, (lole, eeu) in self.per_year.items()
            ],
        }


def _prefix_tables(capdist: CapacityDistribution):
    """Strict-CDF lookup tables on the capacity grid.

    below_mass[k] = P(X < k*res); below_energy[k] = E[X; X < k*res] in MW.
    Index n_levels means "above all atoms".
    """
    p = capdist.probs
    below_mass = np.concatenate(([0.0], np.cumsum(p)))
    moments = p * np.arange(p.size) * capdist.resolution_mw
    below_energy = np.concatenate(([0.0], np.cumsum(moments)))
    return below_mass, below_energy


def _strict_index(capdist: CapacityDistribution, demand_mw: np.ndarray) -> np.ndarray:
    """Number of grid atoms strictly below each demand value.

    Compares against the actual level values so exact ties (capacity equal to
    demand) are excluded without any division rounding.
    """
    levels = np.arange(capdist.probs.size) * capdist.resolution_mw
    return np.searchsorted(levels, np.asarray(demand_mw, dtype=float), side="left")


def lolp(capdist: CapacityDistribution, net_demand_mw: float) -> float:
    """P(available capacity < net demand), strict."""
    below_mass, _ = _prefix_tables(capdist)
    idx = _strict_index(capdist, np.array([net_demand_mw]))
    return float(below_mass[idx[0]])


def epu(capdist: CapacityDistribution, net_demand_mw: float) -> float:
    """Expected unserved power (MW) at one time point: E[max(0, demand - X)]."""
    below_mass, below_energy = _prefix_tables(capdist)
    idx = _strict_index(capdist, np.array([net_demand_mw]))
    d = float(net_demand_mw)
    return float(d * below_mass[idx[0]] - below_energy[idx[0]])


def lole_year(capdist: CapacityDistribution, year_net_demand_mw) -> float:
    """Hindcast LOLE for one year: sum of hourly shortfall probabilities."""
    series = np.asarray(year_net_demand_mw, dtype=float)
    if series.size == 0:
        raise ValidationError("net demand series must be nonempty")
    below_mass, _ = _prefix_tables(capdist)
    return float(below_mass[_strict_index(capdist, series)].sum())


def eeu_year(capdist: CapacityDistribution, year_net_demand_mw) -> float:
    """Hindcast EEU for one year in MWh (1-hour steps, so MW sums are MWh)."""
    series = np.asarray(year_net_demand_mw, dtype=float)
    if series.size == 0:
        raise ValidationError("net demand series must be nonempty")
    below_mass, below_energy = _prefix_tables(capdist)
    idx = _strict_index(capdist, series)
    return float((series * below_mass[idx] - below_energy[idx]).sum())


def risk_indices(
    fleet: Fleet,
    dataset: WeatherDataset,
    scenario: ScenarioConfig,
    resolution_mw: float = 1.0,
    capdist: CapacityDistribution | None = None,
) -> RiskIndices:
    """LOLE/EEU per year and their unweighted means across years.

    ``capdist`` may be passed to reuse a previously built distribution.
    """
    if capdist is None:
        capdist = build_capacity_distribution(fleet, resolution_mw)
    per_year: dict[str, tuple[float, float]] = {}
    for year in dataset.years:
        series = net_demand(year, scenario)
        per_year[year.label] = (lole_year(capdist, series), eeu_year(capdist, series))
    loles = [v[0] for v in per_year.values()]
    eeus = [v[1] for v in per_year.values()]
    return RiskIndices(
        lole_hours_per_period=float(np.mean(loles)),
        eeu_mwh_per_period=float(np.mean(eeus)),
        per_year=per_year,
    )


def year_contributions(indices: RiskIndices) -> dict[str, float]:
    """Fraction of total EEU attributable to each year; fractions sum to 1."""
    total = sum(eeu for _, eeu in indices.per_year.values())
    if total <= 0.0:
        raise ValidationError("total EEU is zero; no contributions to attribute")
    return {label: eeu / total for label, (_, eeu) in indices.per_year.items()}


def leave_one_out_indices(
    fleet: Fleet,
    dataset: WeatherDataset,
    scenario: ScenarioConfig,
    excluded_year: str,
    resolution_mw: float = 1.0,
) -> RiskIndices:
    """Indices recomputed with one year removed from the dataset."""
    if dataset.n_years < 2:
        raise ValidationError("leave-one-out needs at least two years")
    return risk_indices(fleet, dataset.without(excluded_year), scenario, resolution_mw)
