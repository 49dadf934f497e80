"""Hourly demand and wind capacity-factor data per historic weather year.

Provides CSV ingestion/serialization, demand rescaling to a target average
cold spell (ACS) peak, wind-fleet availability, net demand assembly, and a
deterministic synthetic data generator used for demos and tests.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DataFormatError, ValidationError
from .seeding import substream

__all__ = [
    "HistoricYear",
    "WeatherDataset",
    "ScenarioConfig",
    "load_dataset",
    "save_dataset",
    "rescale_demand",
    "wind_available_capacity",
    "net_demand",
    "generate_synthetic_dataset",
    "SYNTHETIC_FIRST_YEAR",
]

DEMAND_CSV_HEADER = ["year", "hour", "demand_mw"]
DEMAND_CSV_HEADER_ACS = ["year", "hour", "demand_mw", "acs_peak_mw"]
WIND_CSV_HEADER = ["year", "hour", "cf_onshore", "cf_offshore"]

# Synthetic years are labeled consecutively from here; the engineered calm
# episode, when requested, always sits in the first year.
SYNTHETIC_FIRST_YEAR = 2005


def _frozen(arr) -> np.ndarray:
    out = np.asarray(arr, dtype=float).copy()
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class HistoricYear:
    """One historic weather year: hourly demand, wind CFs and the ACS peak."""

    label: str
    demand_mw: np.ndarray
    cf_onshore: np.ndarray
    cf_offshore: np.ndarray
    acs_peak_mw: float

    def __post_init__(self):
        d = _frozen(self.demand_mw)
        on = _frozen(self.cf_onshore)
        off = _frozen(self.cf_offshore)
        if d.size < 1:
            raise ValidationError(f"year {self.label!r}: needs at least one hour")
        if on.size != d.size or off.size != d.size:
            raise ValidationError(f"year {self.label!r}: series lengths differ")
        if not np.all(np.isfinite(d)) or np.any(d < 0):
            raise ValidationError(f"year {self.label!r}: demand must be finite and >= 0")
        for name, cf in (("cf_onshore", on), ("cf_offshore", off)):
            if not np.all(np.isfinite(cf)) or np.any(cf < 0) or np.any(cf > 1):
                raise ValidationError(f"year {self.label!r}: {name} must lie in [0, 1]")
        if not math.isfinite(self.acs_peak_mw) or self.acs_peak_mw <= 0:
            raise ValidationError(f"year {self.label!r}: acs_peak_mw must be > 0")
        object.__setattr__(self, "demand_mw", d)
        object.__setattr__(self, "cf_onshore", on)
        object.__setattr__(self, "cf_offshore", off)

    @property
    def n_hours(self) -> int:
        return int(self.demand_mw.size)


@dataclass(frozen=True)
class WeatherDataset:
    """Collection of historic years with unique labels."""

    years: tuple[HistoricYear, ...]

    def __post_init__(self):
        object.__setattr__(self, "years", tuple(self.years))
        if not self.years:
            raise ValidationError("dataset needs at least one year")
        labels = [y.label for y in self.years]
        if len(set(labels)) != len(labels):
            raise ValidationError("year labels must be unique")

    @property
    def labels(self) -> list[str]:
        return [y.label for y in self.years]

    @property
    def n_years(self) -> int:
        return len(self.years)

    def year(self, label: str) -> HistoricYear:
        for y in self.years:
            if y.label == label:
                return y
        raise ValidationError(f"year {label!r} not in dataset (have {self.labels})")

    def without(self, label: str) -> "WeatherDataset":
        """Dataset with one year removed; errors if absent or if it is the only year."""
        kept = tuple(y for y in self.years if y.label != label)
        if len(kept) == len(self.years):
            raise ValidationError(f"year {label!r} not in dataset (have {self.labels})")
        if not kept:
            raise ValidationError("cannot exclude the only year in the dataset")
        return WeatherDataset(years=kept)


@dataclass(frozen=True)
class ScenarioConfig:
    """Scenario knobs: target ACS peak, installed wind, split, shift, season length."""

    target_acs_peak_mw: float
    wind_total_gw: float
    season_hours: int
    onshore_fraction: float = 0.35
    demand_shift_mw: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.target_acs_peak_mw) or self.target_acs_peak_mw <= 0:
            raise ValidationError("target_acs_peak_mw must be > 0")
        if not math.isfinite(self.wind_total_gw) or self.wind_total_gw < 0:
            raise ValidationError("wind_total_gw must be >= 0")
        if not 0.0 <= self.onshore_fraction <= 1.0:
            raise ValidationError("onshore_fraction must be in [0, 1]")
        if not math.isfinite(self.demand_shift_mw):
            raise ValidationError("demand_shift_mw must be finite")
        if int(self.season_hours) < 1:
            raise ValidationError("season_hours must be >= 1")

    def with_shift(self, shift_mw: float) -> "ScenarioConfig":
        return replace(self, demand_shift_mw=float(shift_mw))

    def with_wind(self, wind_total_gw: float) -> "ScenarioConfig":
        return replace(self, wind_total_gw=float(wind_total_gw))


def rescale_demand(year: HistoricYear, target_acs_peak_mw: float) -> HistoricYear:
    """Scale demand by target/ACS ratio; capacity factors are untouched."""
    if not math.isfinite(target_acs_peak_mw) or target_acs_peak_mw <= 0:
        raise ValidationError("target_acs_peak_mw must be > 0")
    ratio = target_acs_peak_mw / year.acs_peak_mw
    return HistoricYear(
        label=year.label,
        demand_mw=year.demand_mw * ratio,
        cf_onshore=year.cf_onshore,
        cf_offshore=year.cf_offshore,
        acs_peak_mw=target_acs_peak_mw,
    )


def wind_available_capacity(year: HistoricYear, scenario: ScenarioConfig) -> np.ndarray:
    """Hourly available wind capacity in MW for the scenario's installed fleet."""
    installed_mw = 1000.0 * scenario.wind_total_gw
    f = scenario.onshore_fraction
    return installed_mw * (f * year.cf_onshore + (1.0 - f) * year.cf_offshore)


def net_demand(year: HistoricYear, scenario: ScenarioConfig) -> np.ndarray:
    """Rescaled demand minus wind minus the procurement shift, per hour.

    A positive shift stands for extra procured capacity, lowering net demand.
    """
    if year.n_hours != int(scenario.season_hours):
        raise ValidationError(
            f"year {year.label!r} has {year.n_hours} hours, scenario expects "
            f"{scenario.season_hours}"
        )
    scaled = rescale_demand(year, scenario.target_acs_peak_mw)
    return scaled.demand_mw - wind_available_capacity(year, scenario) - scenario.demand_shift_mw


# ---------------------------------------------------------------------------
# CSV ingestion / serialization


def _parse_rows(path, expected_headers):
    """Yield (row_no, fields) for data rows; row numbers count physical lines."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise DataFormatError(f"{path}: empty file, no years found")
        header = [h.strip() for h in header]
        if header not in expected_headers:
            options = " or ".join(",".join(h) for h in expected_headers)
            raise DataFormatError(f"{path}: expected header {options}, got {','.join(header)}")
        rows = []
        for row_no, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise DataFormatError(
                    f"{path} row {row_no}: expected {len(header)} fields, got {len(row)}"
                )
            rows.append((row_no, row))
        return header, rows


def _float_field(path, row_no, name, raw):
    try:
        value = float(raw)
    except ValueError:
        raise DataFormatError(f"{path} row {row_no}: {name} {raw!r} is not a number") from None
    if not math.isfinite(value):
        raise DataFormatError(f"{path} row {row_no}: {name} must be finite")
    return value


def _group_by_year(path, rows, n_value_cols):
    """Group rows into per-year column lists, enforcing contiguous 0-based hours."""
    years: dict[str, list] = {}
    expected_hour: dict[str, int] = {}
    order: list[str] = []
    for row_no, row in rows:
        label = row[0].strip()
        try:
            hour = int(row[1])
        except ValueError:
            raise DataFormatError(f"{path} row {row_no}: hour {row[1]!r} is not an integer") from None
        if label not in years:
            years[label] = [[] for _ in range(n_value_cols)]
            expected_hour[label] = 0
            order.append(label)
        if hour != expected_hour[label]:
            raise DataFormatError(
                f"{path} row {row_no}: year {label} expected hour {expected_hour[label]}, "
                f"got {hour} (missing or out-of-order hours)"
            )
        expected_hour[label] += 1
        for i in range(n_value_cols):
            years[label][i].append((row_no, row[2 + i]))
    if not years:
        raise DataFormatError(f"{path}: no years found")
    return order, years


def load_dataset(demand_path: str | os.PathLike, wind_path: str | os.PathLike) -> WeatherDataset:
    """Assemble a dataset from demand and wind CSVs, joined on (year, hour).

    The ACS peak is the year's maximum demand unless the demand file carries
    an explicit ``acs_peak_mw`` column, which takes precedence.
    """
    demand_header, demand_rows = _parse_rows(
        demand_path, [DEMAND_CSV_HEADER, DEMAND_CSV_HEADER_ACS]
    )
    has_acs = len(demand_header) == 4
    wind_header, wind_rows = _parse_rows(wind_path, [WIND_CSV_HEADER])

    demand_order, demand_years = _group_by_year(
        demand_path, demand_rows, 2 if has_acs else 1
    )
    _, wind_years = _group_by_year(wind_path, wind_rows, 2)

    years = []
    for label in demand_order:
        if label not in wind_years:
            raise DataFormatError(f"{wind_path}: year {label} present in demand but not in wind")
        demand_cols = demand_years[label]
        wind_cols = wind_years[label]
        if len(wind_cols[0]) != len(demand_cols[0]):
            raise DataFormatError(
                f"year {label}: demand has {len(demand_cols[0])} hours but wind has "
                f"{len(wind_cols[0])}"
            )
        demand = [
            _float_field(demand_path, row_no, "demand_mw", raw) for row_no, raw in demand_cols[0]
        ]
        for row_no, raw in demand_cols[0]:
            if float(raw) < 0:
                raise DataFormatError(f"{demand_path} row {row_no}: demand_mw must be >= 0")
        cf_on, cf_off = [], []
        for name, col, dest in (
            ("cf_onshore", wind_cols[0], cf_on),
            ("cf_offshore", wind_cols[1], cf_off),
        ):
            for row_no, raw in col:
                value = _float_field(wind_path, row_no, name, raw)
                if not 0.0 <= value <= 1.0:
                    raise DataFormatError(
                        f"{wind_path} row {row_no}: {name} {value!r} outside [0, 1]"
                    )
                dest.append(value)
        if has_acs:
            acs_values = {raw.strip() for _, raw in demand_cols[1]}
            if len(acs_values) != 1:
                raise DataFormatError(
                    f"{demand_path}: year {label} has inconsistent acs_peak_mw values"
                )
            row_no = demand_cols[1][0][0]
            acs = _float_field(demand_path, row_no, "acs_peak_mw", demand_cols[1][0][1])
            if acs <= 0:
                raise DataFormatError(f"{demand_path} row {row_no}: acs_peak_mw must be > 0")
        else:
            acs = max(demand)
        try:
            years.append(
                HistoricYear(
                    label=label,
                    demand_mw=np.array(demand),
                    cf_onshore=np.array(cf_on),
                    cf_offshore=np.array(cf_off),
                    acs_peak_mw=acs,
                )
            )
        except ValidationError as exc:
            raise DataFormatError(f"{demand_path}: {exc}") from None
    extra = set(wind_years) - set(demand_order)
    if extra:
        raise DataFormatError(
            f"{wind_path}: years {sorted(extra)} present in wind but not in demand"
        )
    return WeatherDataset(years=tuple(years))


def save_dataset(
    dataset: WeatherDataset, demand_path: str | os.PathLike, wind_path: str | os.PathLike
) -> None:
    """Write the dataset in the schemas `load_dataset` reads (exact float round trip)."""
    with open(demand_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(DEMAND_CSV_HEADER_ACS)
        for year in dataset.years:
            acs = repr(float(year.acs_peak_mw))
            for hour, d in enumerate(year.demand_mw):
                writer.writerow([year.label, hour, repr(float(d)), acs])
    with open(wind_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(WIND_CSV_HEADER)
        for year in dataset.years:
            for hour in range(year.n_hours):
                writer.writerow(
                    [
                        year.label,
                        hour,
                        repr(float(year.cf_onshore[hour])),
                        repr(float(year.cf_offshore[hour])),
                    ]
                )


# ---------------------------------------------------------------------------
# Synthetic data generator

# Hour-of-day demand shape (fraction of the daily peak) and weekday factors,
# loosely GB-winter flavored.
_HOUR_SHAPE = np.array(
    [0.67, 0.63, 0.60, 0.59, 0.59, 0.60, 0.74, 0.86, 0.95, 0.96, 0.96, 0.95,
     0.95, 0.95, 0.93, 0.94, 0.99, 1.00, 1.00, 0.96, 0.91, 0.83, 0.73, 0.63]
)
_DAY_FACTORS = np.array([0.97, 1.00, 0.99, 0.98, 0.96, 0.88, 0.85])

# Demand model: demand = acs * day_factor * hour_shape * (base + c_year * max(z_day, 0))
_DEMAND_BASE = 0.88
_COLD_COEFF_RANGE = (0.055, 0.077)  # normal years
_COLD_COEFF_OUTLIER = 0.040         # keeps the outlier year's peak modest
_ACS_RANGE_MW = (4800.0, 5200.0)

# Aggregate CF model: cf = lo + (hi - lo) * sigmoid(a + b*w + noise), shared
# weather driver w ~ hourly AR(1).
_CF_LO, _CF_HI = 0.10, 0.95
_CF_PARAMS = {"onshore": (-1.15, 0.80), "offshore": (-0.40, 0.80)}
_W_RHO = math.exp(-1.0 / 36.0)  # ~1.5-day correlation time
_CF_NOISE_SD = 0.35

# Calm high-demand episode injected into the first year when requested.
_EPISODE_DAYS = 4
_EPISODE_DEMAND_LO = 0.905  # of the year peak
_EPISODE_DEMAND_SPAN = 0.075
_EPISODE_CF_LO = 0.005
_EPISODE_CF_SPAN = 0.035


def _ar1(rng: np.random.Generator, n: int, rho: float) -> np.ndarray:
    """Stationary AR(1) with N(0,1) marginals."""
    eps = rng.standard_normal(n)
    out = np.empty(n)
    out[0] = eps[0]
    scale = math.sqrt(1.0 - rho * rho)
    for t in range(1, n):
        out[t] = rho * out[t - 1] + scale * eps[t]
    return out


def _sigmoid(x: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-x))


def _synthesize_year(rng: np.random.Generator, hours: int, outlier: bool) -> dict:
    n_days = (hours + 23) // 24
    padded = n_days * 24

    acs = rng.uniform(*_ACS_RANGE_MW)
    c_year = _COLD_COEFF_OUTLIER if outlier else rng.uniform(*_COLD_COEFF_RANGE)

    shape = np.tile(_HOUR_SHAPE, n_days) * np.repeat(
        _DAY_FACTORS[np.arange(n_days) % 7], 24
    )
    z_day = _ar1(rng, n_days, rho=0.6)
    cold = c_year * np.repeat(np.maximum(z_day, 0.0), 24)
    noise = 1.0 + 0.01 * rng.standard_normal(padded)
    demand = acs * shape * (_DEMAND_BASE + cold) * np.clip(noise, 0.9, 1.1)

    w = _ar1(rng, padded, rho=_W_RHO)
    cfs = {}
    for name, (a, b) in _CF_PARAMS.items():
        own = _CF_NOISE_SD * _ar1(rng, padded, rho=0.9)
        cfs[name] = _CF_LO + (_CF_HI - _CF_LO) * _sigmoid(a + b * w + own)

    if outlier:
        # Multi-day block of near-zero wind while demand sits just under the
        # year peak; placed mid-season, clear of the year's own peak day.
        peak = float(demand.max())
        start_day = max(1, n_days // 2)
        end_day = min(n_days, start_day + _EPISODE_DAYS)
        lo, hi = start_day * 24, end_day * 24
        hp01 = (np.tile(_HOUR_SHAPE, end_day - start_day) - _HOUR_SHAPE.min()) / (
            1.0 - _HOUR_SHAPE.min()
        )
        demand[lo:hi] = peak * (_EPISODE_DEMAND_LO + _EPISODE_DEMAND_SPAN * hp01)
        calm = _sigmoid(_ar1(rng, hi - lo, rho=0.9))
        cfs["onshore"][lo:hi] = _EPISODE_CF_LO + _EPISODE_CF_SPAN * calm
        cfs["offshore"][lo:hi] = _EPISODE_CF_LO + _EPISODE_CF_SPAN * calm[::-1]

    return {
        "acs": acs,
        "demand": demand[:hours],
        "cf_on": np.clip(cfs["onshore"][:hours], 0.0, 1.0),
        "cf_off": np.clip(cfs["offshore"][:hours], 0.0, 1.0),
    }


def generate_synthetic_dataset(
    seed: int, n_years: int, hours_per_year: int, outlier_year: bool = False
) -> WeatherDataset:
    """Deterministic synthetic demand/wind dataset.

    Demand has diurnal and weekly shape plus cold-spell excursions whose
    severity varies by year; capacity factors follow an autocorrelated shared
    weather driver. With ``outlier_year`` set, the first year contains a
    multi-day episode of simultaneously very calm wind and near-peak demand.

    The per-year ``acs_peak_mw`` is the year's standardized demand scale, not
    its realized maximum, so severe and mild years keep different peak ratios
    after rescaling to a common ACS.
    """
    if n_years < 1:
        raise ValidationError("n_years must be >= 1")
    if hours_per_year < 1:
        raise ValidationError("hours_per_year must be >= 1")
    years = []
    for y in range(n_years):
        parts = _synthesize_year(
            substream(seed, y), hours_per_year, outlier=outlier_year and y == 0
        )
        years.append(
            HistoricYear(
                label=str(SYNTHETIC_FIRST_YEAR + y),
                demand_mw=parts["demand"],
                cf_onshore=parts["cf_on"],
                cf_offshore=parts["cf_off"],
                acs_peak_mw=parts["acs"],
            )
        )
    return WeatherDataset(years=tuple(years))
