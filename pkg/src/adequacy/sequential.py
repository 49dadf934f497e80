"""Time-sequential Monte Carlo of per-period outcome distributions.

Each replication plays one weather year against a fresh fleet availability
trajectory and records the full outcome: shortfall hours, energy unserved,
shortfall days (fixed 24-hour blocks from hour 0) and the energy unserved
within each shortfall day. Replications cycle through the weather years in
dataset order (replication r uses year r mod n_years), which stratifies the
year mixture instead of sampling it.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass

import numpy as np

from .errors import EmptyDistributionError, ValidationError
from .fleet import Fleet, simulate_fleet_capacity
from .metrics import EmpiricalDistribution
from .seeding import derive_seed
from .weather import ScenarioConfig, WeatherDataset, net_demand

__all__ = [
    "ReplicationOutcome",
    "SimulationOutcome",
    "simulate",
    "lold_distribution",
    "eu_distribution",
    "shortfall_days_distribution",
    "eu_within_day_distribution",
    "save_outcome_csv",
]

OUTCOME_CSV_HEADER = ["replication", "weather_year", "lold_hours", "eu_mwh", "shortfall_days"]
DAY_CSV_HEADER = ["replication", "day_index", "eu_mwh"]


@dataclass(frozen=True)
class ReplicationOutcome:
    """Outcome of one simulated period."""

    weather_year: str
    lold_hours: int
    eu_mwh: float
    shortfall_days: int
    eu_per_shortfall_day: tuple[float, ...]


@dataclass(frozen=True)
class SimulationOutcome:
    """All replications of a run plus the seed that reproduces them."""

    replications: tuple[ReplicationOutcome, ...]
    seed: int

    def __post_init__(self):
        if not self.replications:
            raise ValidationError("a simulation outcome needs at least one replication")

    @property
    def n_replications(self) -> int:
        return len(self.replications)


def _day_aggregate(shortfall_mw: np.ndarray) -> tuple[int, tuple[float, ...]]:
    """(shortfall day count, per-shortfall-day EU) over fixed 24-hour blocks."""
    n = shortfall_mw.size
    starts = np.arange(0, n, 24)
    day_eu = np.add.reduceat(shortfall_mw, starts)
    day_hit = np.add.reduceat((shortfall_mw > 0.0).astype(np.int64), starts) > 0
    return int(day_hit.sum()), tuple(float(x) for x in day_eu[day_hit])


def simulate(
    fleet: Fleet,
    dataset: WeatherDataset,
    scenario: ScenarioConfig,
    n_replications: int,
    seed: int,
) -> SimulationOutcome:
    """Run the sequential model; deterministic given the seed.

    Replication r consumes the sub-stream keyed (seed, r), so extending a run
    with more replications reproduces the earlier ones bit for bit.
    """
    if n_replications < 1:
        raise ValidationError("n_replications must be >= 1")
    demands = [net_demand(year, scenario) for year in dataset.years]
    labels = dataset.labels
    n_years = dataset.n_years
    replications = []
    for r in range(n_replications):
        y = r % n_years
        capacity = simulate_fleet_capacity(
            fleet, demands[y].size, derive_seed(seed, r)
        )
        shortfall = np.maximum(demands[y] - capacity, 0.0)
        lold = int(np.count_nonzero(shortfall > 0.0))
        days, day_eus = _day_aggregate(shortfall)
        replications.append(
            ReplicationOutcome(
                weather_year=labels[y],
                lold_hours=lold,
                eu_mwh=float(shortfall.sum()),
                shortfall_days=days,
                eu_per_shortfall_day=day_eus,
            )
        )
    return SimulationOutcome(replications=tuple(replications), seed=seed)


def lold_distribution(outcome: SimulationOutcome) -> EmpiricalDistribution:
    """Equally weighted distribution of shortfall hours per period."""
    return EmpiricalDistribution.from_values([r.lold_hours for r in outcome.replications])


def eu_distribution(outcome: SimulationOutcome) -> EmpiricalDistribution:
    """Equally weighted distribution of energy unserved per period (MWh)."""
    return EmpiricalDistribution.from_values([r.eu_mwh for r in outcome.replications])


def shortfall_days_distribution(outcome: SimulationOutcome) -> EmpiricalDistribution:
    """Equally weighted distribution of the number of shortfall days per period."""
    return EmpiricalDistribution.from_values([r.shortfall_days for r in outcome.replications])


def eu_within_day_distribution(outcome: SimulationOutcome) -> EmpiricalDistribution:
    """EU within shortfall days, pooled across replications (one sample per day)."""
    pooled = [eu for r in outcome.replications for eu in r.eu_per_shortfall_day]
    if not pooled:
        raise EmptyDistributionError("no shortfall days in any replication")
    return EmpiricalDistribution.from_values(pooled)


def save_outcome_csv(
    outcome: SimulationOutcome,
    outcome_path: str | os.PathLike,
    days_path: str | os.PathLike,
) -> None:
    """Write per-replication and per-shortfall-day detail CSVs."""
    with open(outcome_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(OUTCOME_CSV_HEADER)
        for i, r in enumerate(outcome.replications):
            writer.writerow(
                [i, r.weather_year, r.lold_hours, repr(r.eu_mwh), r.shortfall_days]
            )
    with open(days_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(DAY_CSV_HEADER)
        for i, r in enumerate(outcome.replications):
            for d, eu in enumerate(r.eu_per_shortfall_day):
                writer.writerow([i, d, repr(eu)])
