"""Conventional generation fleet model.

Two views of the same fleet:

* time-collapsed: the exact discrete distribution of available capacity,
  built by convolving per-unit two-point (outage/available) distributions
  on a fixed MW grid;
* time-sequential: per-unit two-state Markov chains at hourly resolution,
  summed into a fleet capacity trajectory.
"""

from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import DataFormatError, ValidationError
from .seeding import substream

__all__ = [
    "GeneratingUnit",
    "Fleet",
    "CapacityDistribution",
    "build_capacity_distribution",
    "unit_transition_rates",
    "simulate_unit_trajectory",
    "simulate_fleet_capacity",
    "load_fleet",
    "save_fleet",
]

FLEET_CSV_HEADER = ["unit_id", "capacity_mw", "availability", "mttr_hours"]


@dataclass(frozen=True)
class GeneratingUnit:
    """A conventional unit: capacity, stationary availability and mean repair time."""

    id: str
    capacity_mw: float
    availability: float
    mttr_hours: float

    def __post_init__(self):
        if not math.isfinite(self.capacity_mw) or self.capacity_mw <= 0:
            raise ValidationError(f"unit {self.id!r}: capacity_mw must be finite and > 0")
        if not math.isfinite(self.availability) or not 0 < self.availability <= 1:
            raise ValidationError(f"unit {self.id!r}: availability must be in (0, 1]")
        if not math.isfinite(self.mttr_hours) or self.mttr_hours <= 0:
            raise ValidationError(f"unit {self.id!r}: mttr_hours must be finite and > 0")


@dataclass(frozen=True)
class Fleet:
    """Ordered collection of generating units. May be empty."""

    units: tuple[GeneratingUnit, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "units", tuple(self.units))
        ids = [u.id for u in self.units]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise ValidationError(f"duplicate unit ids: {dupes}")

    def __len__(self) -> int:
        return len(self.units)

    @property
    def total_capacity_mw(self) -> float:
        return float(sum(u.capacity_mw for u in self.units))


@dataclass(frozen=True)
class CapacityDistribution:
    """Discrete distribution of available fleet capacity on a fixed MW grid.

    ``probs[k]`` is the probability of exactly ``k * resolution_mw`` MW being
    available; the support is 0 .. len(probs)-1 grid steps.
    """

    resolution_mw: float
    probs: np.ndarray

    def __post_init__(self):
        if not math.isfinite(self.resolution_mw) or self.resolution_mw <= 0:
            raise ValidationError("resolution_mw must be finite and > 0")
        p = np.asarray(self.probs, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise ValidationError("probs must be a nonempty 1-d array")
        if np.any(p < 0) or not np.all(np.isfinite(p)):
            raise ValidationError("probabilities must be finite and >= 0")
        if abs(float(p.sum()) - 1.0) > 1e-12:
            raise ValidationError(f"probability mass {p.sum()!r} not 1 within 1e-12")
        p = p.copy()
        p.flags.writeable = False
        object.__setattr__(self, "probs", p)

    @property
    def levels_mw(self) -> np.ndarray:
        """Capacity level of each grid atom, in MW."""
        return np.arange(self.probs.size) * self.resolution_mw

    @property
    def probabilities(self) -> dict[float, float]:
        """Sparse map of capacity level (MW) to probability, nonzero atoms only."""
        nz = np.nonzero(self.probs)[0]
        return {float(k * self.resolution_mw): float(self.probs[k]) for k in nz}

    @property
    def max_capacity_mw(self) -> float:
        return float((self.probs.size - 1) * self.resolution_mw)

    def mean_mw(self) -> float:
        return float(np.dot(np.arange(self.probs.size), self.probs) * self.resolution_mw)


def _grid_steps(capacity_mw: float, resolution_mw: float) -> int:
    # round half-up, per the documented grid convention
    return int(math.floor(capacity_mw / resolution_mw + 0.5))


def build_capacity_distribution(fleet: Fleet, resolution_mw: float = 1.0) -> CapacityDistribution:
    """Exact distribution of summed independent unit capacities.

    Unit capacities are rounded half-up to the nearest grid multiple before
    convolution, so the result is exact on the grid.
    """
    if not math.isfinite(resolution_mw) or resolution_mw <= 0:
        raise ValidationError("resolution_mw must be finite and > 0")
    probs = np.array([1.0])
    for unit in fleet.units:
        steps = _grid_steps(unit.capacity_mw, resolution_mw)
        p = unit.availability
        out = np.zeros(probs.size + steps)
        out[: probs.size] += (1.0 - p) * probs
        out[steps:] += p * probs
        probs = out
    return CapacityDistribution(resolution_mw=resolution_mw, probs=probs)


def unit_transition_rates(unit: GeneratingUnit) -> tuple[float, float]:
    """Per-hour (failure_rate, repair_rate) whose stationary up-probability is
    the unit's availability.

    repair_rate = 1/MTTR; failure_rate = repair_rate * (1-p)/p, which makes
    MTTF = MTTR * p/(1-p) and p = MTTF/(MTTF+MTTR).
    """
    repair_rate = 1.0 / unit.mttr_hours
    failure_rate = repair_rate * (1.0 - unit.availability) / unit.availability
    return failure_rate, repair_rate


def _transition_probabilities(unit: GeneratingUnit) -> tuple[float, float]:
    """Hourly transition probabilities, rejecting rates the hourly grid cannot hold."""
    failure_rate, repair_rate = unit_transition_rates(unit)
    if repair_rate > 1.0:
        raise ValidationError(
            f"unit {unit.id!r}: repair rate {repair_rate:.4g}/h exceeds 1 at the hourly "
            f"step (mttr_hours must be >= 1)"
        )
    if failure_rate > 1.0:
        raise ValidationError(
            f"unit {unit.id!r}: failure rate {failure_rate:.4g}/h exceeds 1 at the hourly step"
        )
    return failure_rate, repair_rate


def _fill_trajectory(
    out: np.ndarray, rng: np.random.Generator, p_fail: float, p_repair: float, p_up: float
) -> None:
    """Fill ``out`` with a stationary-start two-state chain, run by run.

    Sojourn lengths in the hourly chain are geometric, and the geometric
    distribution is memoryless, so drawing the first sojourn like any other
    is consistent with the stationary start.
    """
    n = out.size
    up = bool(rng.random() < p_up)
    t = 0
    while t < n:
        q = p_fail if up else p_repair
        if q <= 0.0:
            run = n - t
        else:
            run = min(int(rng.geometric(q)), n - t)
        out[t : t + run] = up
        t += run
        up = not up


def simulate_unit_trajectory(unit: GeneratingUnit, n_hours: int, seed: int) -> np.ndarray:
    """Hourly 0/1 availability sequence of one unit; deterministic in (unit, n_hours, seed).

    The chain starts from its stationary distribution (up with probability
    ``availability``), so time averages are unbiased at any horizon.
    """
    if n_hours < 1:
        raise ValidationError("n_hours must be >= 1")
    p_fail, p_repair = _transition_probabilities(unit)
    out = np.empty(n_hours, dtype=np.uint8)
    _fill_trajectory(out, substream(seed, 0), p_fail, p_repair, unit.availability)
    return out


def simulate_fleet_capacity(fleet: Fleet, n_hours: int, seed: int) -> np.ndarray:
    """Hourly available fleet capacity (MW): sum of per-unit trajectories.

    Unit ``i`` consumes the sub-stream keyed (seed, i), so the streams are
    independent and stable under adding or removing other units.
    """
    if n_hours < 1:
        raise ValidationError("n_hours must be >= 1")
    capacity = np.zeros(n_hours)
    state = np.empty(n_hours, dtype=np.uint8)
    for i, unit in enumerate(fleet.units):
        p_fail, p_repair = _transition_probabilities(unit)
        _fill_trajectory(state, substream(seed, i), p_fail, p_repair, unit.availability)
        capacity += unit.capacity_mw * state
    return capacity


def load_fleet(path: str | os.PathLike) -> Fleet:
    """Read a fleet CSV (`unit_id,capacity_mw,availability,mttr_hours`)."""
    units = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != FLEET_CSV_HEADER:
            raise DataFormatError(
                f"{path}: expected header {','.join(FLEET_CSV_HEADER)}, got {header}"
            )
        for row_no, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 4:
                raise DataFormatError(f"{path} row {row_no}: expected 4 fields, got {len(row)}")
            unit_id = row[0].strip()
            try:
                cap, avail, mttr = (float(row[i]) for i in (1, 2, 3))
            except ValueError as exc:
                raise DataFormatError(f"{path} row {row_no}: {exc}") from None
            try:
                units.append(
                    GeneratingUnit(
                        id=unit_id, capacity_mw=cap, availability=avail, mttr_hours=mttr
                    )
                )
            except ValidationError as exc:
                raise DataFormatError(f"{path} row {row_no}: {exc}") from None
    return Fleet(units=tuple(units))


def save_fleet(fleet: Fleet, path: str | os.PathLike) -> None:
    """Write a fleet CSV in the schema `load_fleet` reads."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(FLEET_CSV_HEADER)
        for u in fleet.units:
            writer.writerow([u.id, repr(u.capacity_mw), repr(u.availability), repr(u.mttr_hours)])
