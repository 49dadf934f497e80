"""The bundled demo system: a synthetic mid-size fleet and weather dataset.

The fleet is a fixed table (ids, MW, availability, MTTR) sized so that the
synthetic demand years produce meaningful but not catastrophic shortfall risk
once calibrated. The weather dataset carries the engineered calm episode in
its first year ("2005").
"""

from __future__ import annotations

from .fleet import Fleet, GeneratingUnit
from .weather import ScenarioConfig, WeatherDataset, generate_synthetic_dataset

__all__ = [
    "DEMO_SEED",
    "DEMO_N_YEARS",
    "DEMO_HOURS_PER_YEAR",
    "DEMO_TARGET_ACS_MW",
    "DEMO_ONSHORE_FRACTION",
    "DEMO_WIND_LEVELS_GW",
    "DEMO_TARGET_EEU_MWH",
    "DEMO_OUTLIER_YEAR",
    "demo_fleet",
    "demo_dataset",
    "demo_scenario",
]

DEMO_SEED = 73101
DEMO_N_YEARS = 8
DEMO_HOURS_PER_YEAR = 1344  # 56-day peak season
DEMO_TARGET_ACS_MW = 5600.0
DEMO_ONSHORE_FRACTION = 0.35
DEMO_WIND_LEVELS_GW = (1.0, 4.0, 8.0)
DEMO_TARGET_EEU_MWH = 3000.0
DEMO_OUTLIER_YEAR = "2005"

# (count, capacity MW, availability, MTTR h)
_FLEET_BLOCKS = [
    (4, 800.0, 0.90, 50.0),
    (4, 500.0, 0.92, 40.0),
    (6, 300.0, 0.93, 36.0),
    (4, 200.0, 0.95, 24.0),
    (4, 120.0, 0.97, 16.0),
]


def demo_fleet() -> Fleet:
    units = []
    for count, cap, avail, mttr in _FLEET_BLOCKS:
        for _ in range(count):
            units.append(
                GeneratingUnit(
                    id=f"g{len(units) + 1:02d}",
                    capacity_mw=cap,
                    availability=avail,
                    mttr_hours=mttr,
                )
            )
    return Fleet(units=tuple(units))


def demo_dataset(
    seed: int = DEMO_SEED,
    n_years: int = DEMO_N_YEARS,
    hours_per_year: int = DEMO_HOURS_PER_YEAR,
    outlier_year: bool = True,
) -> WeatherDataset:
    return generate_synthetic_dataset(seed, n_years, hours_per_year, outlier_year)


def demo_scenario(wind_gw: float, shift_mw: float = 0.0) -> ScenarioConfig:
    return ScenarioConfig(
        target_acs_peak_mw=DEMO_TARGET_ACS_MW,
        wind_total_gw=wind_gw,
        season_hours=DEMO_HOURS_PER_YEAR,
        onshore_fraction=DEMO_ONSHORE_FRACTION,
        demand_shift_mw=shift_mw,
    )
