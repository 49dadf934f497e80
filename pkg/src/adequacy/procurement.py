"""Capacity procurement decision analysis.

Procured capacity is modeled as a pure shift r of net demand (small-addition
regime), so total cost is CONE*r + VOLL*EEU(r). EEU is convex and
nonincreasing in r with derivative -LOLE(r), so the cost is convex and the
interior optimum satisfies LOLE(r*) = CONE/VOLL. Both the calibration and
the optimality solve use bisection: LOLE(r) is a nonincreasing step function
on the capacity grid, so a derivative-based method would stall on flats,
while bisection converges to the smallest r attaining the target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BoundarySolutionError, CalibrationInfeasibleError, ValidationError
from .fleet import CapacityDistribution, Fleet, build_capacity_distribution
from .indices import eeu_year, lole_year
from .weather import ScenarioConfig, WeatherDataset, net_demand

__all__ = [
    "ProcurementProblem",
    "ProcurementSolution",
    "CalibrationResult",
    "RiskCurves",
    "eeu_of_shift",
    "lole_of_shift",
    "calibrate_to_target_eeu",
    "optimize_procurement",
    "voll_sensitivity_sweep",
]

_MAX_BISECTION_STEPS = 200


class RiskCurves:
    """Reusable evaluator of LOLE(r) and EEU(r) for a fixed system.

    Precomputes the capacity distribution and per-year zero-shift net demand
    so repeated evaluations during bisection stay cheap. The scenario's own
    demand_shift_mw is ignored: r is always the absolute shift from the
    unshifted scenario.
    """

    def __init__(
        self,
        fleet: Fleet,
        dataset: WeatherDataset,
        scenario: ScenarioConfig,
        resolution_mw: float = 1.0,
        capdist: CapacityDistribution | None = None,
    ):
        self.capdist = (
            build_capacity_distribution(fleet, resolution_mw) if capdist is None else capdist
        )
        base = scenario.with_shift(0.0)
        self._net_demands = [net_demand(year, base) for year in dataset.years]
        self.shift_bound_mw = max(fleet.total_capacity_mw, self.capdist.resolution_mw)

    def lole(self, shift_mw: float) -> float:
        return float(
            sum(lole_year(self.capdist, nd - shift_mw) for nd in self._net_demands)
            / len(self._net_demands)
        )

    def eeu(self, shift_mw: float) -> float:
        return float(
            sum(eeu_year(self.capdist, nd - shift_mw) for nd in self._net_demands)
            / len(self._net_demands)
        )


@dataclass(frozen=True)
class ProcurementProblem:
    """CONE/VOLL cost-benefit setup over a fixed system; the shift r is free."""

    cone_per_mw_year: float
    voll_per_mwh: float
    fleet: Fleet
    dataset: WeatherDataset
    scenario: ScenarioConfig
    resolution_mw: float = 1.0

    def __post_init__(self):
        for name in ("cone_per_mw_year", "voll_per_mwh"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                raise ValidationError(f"{name} must be finite and > 0")

    def curves(self) -> RiskCurves:
        return RiskCurves(self.fleet, self.dataset, self.scenario, self.resolution_mw)


@dataclass(frozen=True)
class ProcurementSolution:
    r_star_mw: float
    total_cost: float
    lole_at_r_star: float
    eeu_at_r_star: float


@dataclass(frozen=True)
class CalibrationResult:
    shift_mw: float
    eeu_mwh: float


def eeu_of_shift(
    fleet: Fleet,
    dataset: WeatherDataset,
    scenario: ScenarioConfig,
    r_mw: float,
    resolution_mw: float = 1.0,
) -> float:
    """Nonsequential EEU with the demand shift set to r (MWh per period)."""
    return RiskCurves(fleet, dataset, scenario, resolution_mw).eeu(r_mw)


def lole_of_shift(
    fleet: Fleet,
    dataset: WeatherDataset,
    scenario: ScenarioConfig,
    r_mw: float,
    resolution_mw: float = 1.0,
) -> float:
    """Nonsequential LOLE with the demand shift set to r (hours per period)."""
    return RiskCurves(fleet, dataset, scenario, resolution_mw).lole(r_mw)


def calibrate_to_target_eeu(
    fleet: Fleet,
    dataset: WeatherDataset,
    scenario: ScenarioConfig,
    target_eeu_mwh: float,
    tolerance: float = 1e-3,
    resolution_mw: float = 1.0,
    curves: RiskCurves | None = None,
) -> CalibrationResult:
    """Find the shift r at which EEU(r) hits the target, by bisection.

    Stops when |EEU(r) - target| <= tolerance * target. EEU is continuous in
    r, so a bracket guarantees convergence; the bracket is +/- total fleet
    capacity.
    """
    if not math.isfinite(target_eeu_mwh) or target_eeu_mwh <= 0:
        raise ValidationError("target_eeu_mwh must be > 0")
    if curves is None:
        curves = RiskCurves(fleet, dataset, scenario, resolution_mw)
    lo, hi = -curves.shift_bound_mw, curves.shift_bound_mw
    eeu_lo, eeu_hi = curves.eeu(lo), curves.eeu(hi)
    if eeu_lo < target_eeu_mwh:
        raise CalibrationInfeasibleError(
            f"EEU at shift {lo:.0f} MW is {eeu_lo:.3f} MWh, below target "
            f"{target_eeu_mwh:.3f}; cannot bracket"
        )
    if eeu_hi > target_eeu_mwh:
        raise CalibrationInfeasibleError(
            f"EEU at shift {hi:.0f} MW is {eeu_hi:.3f} MWh, above target "
            f"{target_eeu_mwh:.3f}; cannot bracket"
        )
    for _ in range(_MAX_BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        eeu_mid = curves.eeu(mid)
        if abs(eeu_mid - target_eeu_mwh) <= tolerance * target_eeu_mwh:
            return CalibrationResult(shift_mw=mid, eeu_mwh=eeu_mid)
        if eeu_mid > target_eeu_mwh:
            lo = mid
        else:
            hi = mid
    raise CalibrationInfeasibleError(
        f"bisection did not reach tolerance {tolerance:g} within "
        f"{_MAX_BISECTION_STEPS} steps (flat EEU region?)"
    )


def _solve_lole_target(curves: RiskCurves, target_lole: float) -> float:
    """Smallest shift r with LOLE(r) <= target, to a tight interval tolerance.

    LOLE(r) is nonincreasing and right-continuous in r, so the predicate
    LOLE(r) <= target is monotone and its boundary point is attained;
    predicate bisection lands on the smallest r attaining the target, which
    is also the documented tie-break on flats.
    """
    lo, hi = -curves.shift_bound_mw, curves.shift_bound_mw
    lole_lo, lole_hi = curves.lole(lo), curves.lole(hi)
    if lole_lo <= target_lole:
        raise BoundarySolutionError(
            f"LOLE at the lower shift bound ({lo:.0f} MW) is already "
            f"{lole_lo:.6g} h <= target {target_lole:.6g} h; optimum is not interior",
            bound="lower",
        )
    if lole_hi > target_lole:
        raise BoundarySolutionError(
            f"LOLE at the upper shift bound ({hi:.0f} MW) is {lole_hi:.6g} h, "
            f"still above target {target_lole:.6g} h; optimum is not interior",
            bound="upper",
        )
    # interval tolerance well below the capacity grid step
    tol_r = 1e-9 * max(1.0, curves.shift_bound_mw)
    while hi - lo > tol_r:
        mid = 0.5 * (lo + hi)
        if curves.lole(mid) <= target_lole:
            hi = mid
        else:
            lo = mid
    return hi


def optimize_procurement(
    problem: ProcurementProblem, curves: RiskCurves | None = None
) -> ProcurementSolution:
    """Minimize CONE*r + VOLL*EEU(r) by solving LOLE(r) = CONE/VOLL."""
    if curves is None:
        curves = problem.curves()
    ratio = problem.cone_per_mw_year / problem.voll_per_mwh
    r_star = _solve_lole_target(curves, ratio)
    eeu_star = curves.eeu(r_star)
    return ProcurementSolution(
        r_star_mw=r_star,
        total_cost=problem.cone_per_mw_year * r_star + problem.voll_per_mwh * eeu_star,
        lole_at_r_star=curves.lole(r_star),
        eeu_at_r_star=eeu_star,
    )


def voll_sensitivity_sweep(
    problem: ProcurementProblem, voll_values
) -> list[tuple[float, ProcurementSolution | BoundarySolutionError]]:
    """Re-optimize per VOLL; boundary failures are recorded without aborting.

    Output is ordered by VOLL; the (cost term, EEU) pairs of successful points
    trace the cost-reliability Pareto frontier.
    """
    for v in voll_values:
        if not math.isfinite(v) or v <= 0:
            raise ValidationError(f"VOLL values must be finite and > 0, got {v}")
    curves = problem.curves()
    results = []
    for voll in sorted(float(v) for v in voll_values):
        sub = ProcurementProblem(
            cone_per_mw_year=problem.cone_per_mw_year,
            voll_per_mwh=voll,
            fleet=problem.fleet,
            dataset=problem.dataset,
            scenario=problem.scenario,
            resolution_mw=problem.resolution_mw,
        )
        try:
            results.append((voll, optimize_procurement(sub, curves)))
        except BoundarySolutionError as exc:
            results.append((voll, exc))
    return results
