import numpy as np
import pytest

from adequacy.demo import (
    DEMO_TARGET_EEU_MWH,
    DEMO_WIND_LEVELS_GW,
    demo_dataset,
    demo_fleet,
    demo_scenario,
)
from adequacy.errors import BoundarySolutionError, CalibrationInfeasibleError, ValidationError
from adequacy.fleet import Fleet, GeneratingUnit
from adequacy.procurement import (
    ProcurementProblem,
    ProcurementSolution,
    RiskCurves,
    calibrate_to_target_eeu,
    eeu_of_shift,
    optimize_procurement,
    voll_sensitivity_sweep,
)
from adequacy.weather import HistoricYear, ScenarioConfig, WeatherDataset


def unit(cap, p, uid):
    return GeneratingUnit(id=uid, capacity_mw=cap, availability=p, mttr_hours=24.0)


def small_system():
    fleet = Fleet(
        units=(
            unit(100.0, 0.9, "a"),
            unit(80.0, 0.85, "b"),
            unit(60.0, 0.92, "c"),
            unit(50.0, 0.88, "d"),
        )
    )
    rng = np.random.default_rng(21)
    demand = rng.uniform(80.0, 280.0, size=96)
    year = HistoricYear(
        label="2005",
        demand_mw=demand,
        cf_onshore=np.zeros(96),
        cf_offshore=np.zeros(96),
        acs_peak_mw=float(demand.max()),
    )
    ds = WeatherDataset(years=(year,))
    sc = ScenarioConfig(
        target_acs_peak_mw=float(demand.max()), wind_total_gw=0.0, season_hours=96,
        onshore_fraction=0.35, demand_shift_mw=0.0,
    )
    return fleet, ds, sc


class TestEeuOfShift:
    def test_zero_shift_is_baseline(self):
        fleet, ds, sc = small_system()
        curves = RiskCurves(fleet, ds, sc)
        assert eeu_of_shift(fleet, ds, sc, 0.0) == pytest.approx(curves.eeu(0.0))

    def test_monotone_nonincreasing(self):
        fleet, ds, sc = small_system()
        values = [eeu_of_shift(fleet, ds, sc, r) for r in (-50.0, 0.0, 50.0, 120.0)]
        assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))

    def test_finite_difference_slope_is_minus_lole(self):
        # demands fixed at x.5 offsets so (d - r +/- h) stays between atoms
        fleet, _, _ = small_system()
        rng = np.random.default_rng(3)
        demand = np.floor(rng.uniform(80.0, 280.0, size=96)) + 0.5
        year = HistoricYear(
            label="2005", demand_mw=demand, cf_onshore=np.zeros(96),
            cf_offshore=np.zeros(96), acs_peak_mw=float(demand.max()),
        )
        ds = WeatherDataset(years=(year,))
        sc = ScenarioConfig(
            target_acs_peak_mw=float(demand.max()), wind_total_gw=0.0, season_hours=96,
            onshore_fraction=0.35, demand_shift_mw=0.0,
        )
        curves = RiskCurves(fleet, ds, sc)
        for r in (0.25, 20.25, 75.25):
            h = 0.05
            slope = (curves.eeu(r + h) - curves.eeu(r - h)) / (2 * h)
            assert slope == pytest.approx(-curves.lole(r), rel=1e-4)

    def test_midpoint_convexity(self):
        fleet, ds, sc = small_system()
        curves = RiskCurves(fleet, ds, sc)
        for r1, r3 in ((-80.0, 40.0), (0.0, 100.0), (-30.0, 150.0)):
            mid = 0.5 * (r1 + r3)
            assert curves.eeu(mid) <= 0.5 * (curves.eeu(r1) + curves.eeu(r3)) + 1e-9


class TestCalibration:
    def test_target_equal_to_baseline_gives_zero_shift(self):
        fleet, ds, sc = small_system()
        baseline = eeu_of_shift(fleet, ds, sc, 0.0)
        result = calibrate_to_target_eeu(fleet, ds, sc, baseline)
        assert abs(result.shift_mw) < 1.0
        assert result.eeu_mwh == pytest.approx(baseline, rel=1e-3)

    def test_achieves_target_within_tolerance(self):
        fleet, ds, sc = small_system()
        result = calibrate_to_target_eeu(fleet, ds, sc, 100.0)
        assert abs(result.eeu_mwh - 100.0) <= 0.1
        # an independent recomputation lands on the same EEU
        assert eeu_of_shift(fleet, ds, sc, result.shift_mw) == pytest.approx(result.eeu_mwh)

    def test_halving_target_increases_shift(self):
        fleet, ds, sc = small_system()
        r_full = calibrate_to_target_eeu(fleet, ds, sc, 200.0).shift_mw
        r_half = calibrate_to_target_eeu(fleet, ds, sc, 100.0).shift_mw
        assert r_half > r_full

    def test_demo_system_three_wind_levels(self):
        fleet, ds = demo_fleet(), demo_dataset()
        for gw in DEMO_WIND_LEVELS_GW:
            result = calibrate_to_target_eeu(
                fleet, ds, demo_scenario(gw), DEMO_TARGET_EEU_MWH
            )
            assert abs(result.eeu_mwh - DEMO_TARGET_EEU_MWH) <= 1e-3 * DEMO_TARGET_EEU_MWH

    def test_unreachable_target_raises(self):
        fleet, ds, sc = small_system()
        with pytest.raises(CalibrationInfeasibleError):
            calibrate_to_target_eeu(fleet, ds, sc, 1e12)

    def test_deterministic(self):
        fleet, ds, sc = small_system()
        a = calibrate_to_target_eeu(fleet, ds, sc, 150.0)
        b = calibrate_to_target_eeu(fleet, ds, sc, 150.0)
        assert a.shift_mw == b.shift_mw


def brute_force_sweep(problem, curves, center, half_width=60):
    rs = np.arange(center - half_width, center + half_width + 1.0)
    costs = [
        problem.cone_per_mw_year * r + problem.voll_per_mwh * curves.eeu(r) for r in rs
    ]
    return float(rs[int(np.argmin(costs))])


class TestOptimize:
    def test_lole_at_optimum_matches_cone_voll_ratio(self):
        fleet, ds, sc = small_system()
        problem = ProcurementProblem(
            cone_per_mw_year=60000.0, voll_per_mwh=20000.0, fleet=fleet, dataset=ds, scenario=sc
        )
        curves = problem.curves()
        sol = optimize_procurement(problem, curves)
        ratio = 3.0
        near_ratio = abs(sol.lole_at_r_star - ratio) <= 1e-6
        within_grid_step = (
            curves.lole(sol.r_star_mw - 1.0) >= ratio >= curves.lole(sol.r_star_mw + 1.0)
        )
        assert near_ratio or within_grid_step

    def test_matches_grid_sweep_oracle(self):
        fleet, ds, sc = small_system()
        problem = ProcurementProblem(
            cone_per_mw_year=60000.0, voll_per_mwh=20000.0, fleet=fleet, dataset=ds, scenario=sc
        )
        curves = problem.curves()
        sol = optimize_procurement(problem, curves)
        best_grid = brute_force_sweep(problem, curves, round(sol.r_star_mw))
        assert abs(sol.r_star_mw - best_grid) <= 1.0 + 1e-9

    def test_doubling_voll_halves_target_lole(self):
        fleet, ds, sc = small_system()
        base = ProcurementProblem(
            cone_per_mw_year=60000.0, voll_per_mwh=20000.0, fleet=fleet, dataset=ds, scenario=sc
        )
        doubled = ProcurementProblem(
            cone_per_mw_year=60000.0, voll_per_mwh=40000.0, fleet=fleet, dataset=ds, scenario=sc
        )
        s1, s2 = optimize_procurement(base), optimize_procurement(doubled)
        assert s2.lole_at_r_star <= 1.5 + 1e-3  # half the 3 h target, within solver slack
        assert s2.r_star_mw >= s1.r_star_mw - 1e-6

    def test_boundary_error_when_ratio_unreachably_high(self):
        fleet, ds, sc = small_system()
        problem = ProcurementProblem(
            cone_per_mw_year=1e9, voll_per_mwh=1.0, fleet=fleet, dataset=ds, scenario=sc
        )
        with pytest.raises(BoundarySolutionError) as err:
            optimize_procurement(problem)
        assert err.value.bound == "lower"

    def test_boundary_error_when_reliability_unreachable(self):
        # demand far above anything the bracket can fix
        fleet = Fleet(units=(unit(10.0, 0.9, "a"),))
        demand = np.full(48, 500.0)
        year = HistoricYear(
            label="2005", demand_mw=demand, cf_onshore=np.zeros(48),
            cf_offshore=np.zeros(48), acs_peak_mw=500.0,
        )
        ds = WeatherDataset(years=(year,))
        sc = ScenarioConfig(
            target_acs_peak_mw=500.0, wind_total_gw=0.0, season_hours=48,
            onshore_fraction=0.35, demand_shift_mw=0.0,
        )
        problem = ProcurementProblem(
            cone_per_mw_year=1.0, voll_per_mwh=1e6, fleet=fleet, dataset=ds, scenario=sc
        )
        with pytest.raises(BoundarySolutionError) as err:
            optimize_procurement(problem)
        assert err.value.bound == "upper"

    def test_parameters_validated(self):
        fleet, ds, sc = small_system()
        with pytest.raises(ValidationError):
            ProcurementProblem(
                cone_per_mw_year=0.0, voll_per_mwh=1.0, fleet=fleet, dataset=ds, scenario=sc
            )


class TestVollSweep:
    def test_single_voll_matches_direct_solve(self):
        fleet, ds, sc = small_system()
        problem = ProcurementProblem(
            cone_per_mw_year=60000.0, voll_per_mwh=20000.0, fleet=fleet, dataset=ds, scenario=sc
        )
        sweep = voll_sensitivity_sweep(problem, [20000.0])
        assert len(sweep) == 1
        direct = optimize_procurement(problem)
        voll, sol = sweep[0]
        assert voll == 20000.0
        assert sol.r_star_mw == pytest.approx(direct.r_star_mw, abs=1e-6)

    def test_monotone_along_voll(self):
        fleet, ds, sc = small_system()
        problem = ProcurementProblem(
            cone_per_mw_year=60000.0, voll_per_mwh=20000.0, fleet=fleet, dataset=ds, scenario=sc
        )
        sweep = voll_sensitivity_sweep(problem, [10000.0, 20000.0, 40000.0, 80000.0])
        assert [v for v, _ in sweep] == sorted(v for v, _ in sweep)
        sols = [s for _, s in sweep if isinstance(s, ProcurementSolution)]
        assert len(sols) == 4
        eeus = [s.eeu_at_r_star for s in sols]
        rs = [s.r_star_mw for s in sols]
        assert all(b <= a + 1e-9 for a, b in zip(eeus, eeus[1:]))
        assert all(b >= a - 1e-9 for a, b in zip(rs, rs[1:]))

    def test_frontier_points_non_dominated(self):
        fleet, ds, sc = small_system()
        problem = ProcurementProblem(
            cone_per_mw_year=60000.0, voll_per_mwh=20000.0, fleet=fleet, dataset=ds, scenario=sc
        )
        sweep = voll_sensitivity_sweep(problem, [10000.0, 30000.0, 90000.0])
        points = [
            (problem.cone_per_mw_year * s.r_star_mw, s.eeu_at_r_star)
            for _, s in sweep
            if isinstance(s, ProcurementSolution)
        ]
        for i, (c1, e1) in enumerate(points):
            for j, (c2, e2) in enumerate(points):
                if i != j:
                    assert not (c2 < c1 - 1e-9 and e2 < e1 - 1e-9)

    def test_per_point_errors_do_not_abort(self):
        fleet, ds, sc = small_system()
        problem = ProcurementProblem(
            cone_per_mw_year=60000.0, voll_per_mwh=20000.0, fleet=fleet, dataset=ds, scenario=sc
        )
        # tiny VOLL -> enormous ratio -> boundary error for that entry only
        sweep = voll_sensitivity_sweep(problem, [1e-6, 20000.0])
        assert isinstance(sweep[0][1], BoundarySolutionError)
        assert isinstance(sweep[1][1], ProcurementSolution)

    def test_invalid_voll_rejected(self):
        fleet, ds, sc = small_system()
        problem = ProcurementProblem(
            cone_per_mw_year=60000.0, voll_per_mwh=20000.0, fleet=fleet, dataset=ds, scenario=sc
        )
        with pytest.raises(ValidationError):
            voll_sensitivity_sweep(problem, [-5.0])
