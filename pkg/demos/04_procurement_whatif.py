"""CONE/VOLL cost-benefit procurement and its sensitivity to VOLL.

At the cost minimum the marginal MW of capacity breaks even, which pins the
optimal reliability at LOLE = CONE/VOLL. Sweeping VOLL traces the
cost-reliability frontier; the choice of VOLL *is* the choice of a point on
that frontier.
"""

from adequacy import (
    ProcurementProblem,
    ProcurementSolution,
    calibrate_to_target_eeu,
    optimize_procurement,
    voll_sensitivity_sweep,
)
from adequacy.demo import demo_dataset, demo_fleet, demo_scenario

fleet = demo_fleet()
dataset = demo_dataset()
scenario = demo_scenario(wind_gw=4.0)

cal = calibrate_to_target_eeu(fleet, dataset, scenario, target_eeu_mwh=3000.0)
print(f"baseline: shift {cal.shift_mw:+.0f} MW gives EEU {cal.eeu_mwh:.0f} MWh/season\n")

problem = ProcurementProblem(
    cone_per_mw_year=60000.0, voll_per_mwh=20000.0,
    fleet=fleet, dataset=dataset, scenario=scenario,
)
sol = optimize_procurement(problem)
print(f"CONE 60000 /MW/yr, VOLL 20000 /MWh -> target LOLE {60000/20000:.1f} h")
print(f"  r* = {sol.r_star_mw:+.1f} MW, LOLE(r*) = {sol.lole_at_r_star:.4f} h, "
      f"EEU(r*) = {sol.eeu_at_r_star:.0f} MWh\n")

print("VOLL sweep (the Pareto frontier of procurement cost vs EEU):")
print("  VOLL(/MWh)   r*(MW)    LOLE(h)   EEU(MWh)   capacity cost")
for voll, result in voll_sensitivity_sweep(problem, [5000, 10000, 20000, 40000, 80000, 160000]):
    if isinstance(result, ProcurementSolution):
        print(
            f"  {voll:9.0f}  {result.r_star_mw:8.1f}  {result.lole_at_r_star:8.4f}"
            f"  {result.eeu_at_r_star:9.1f}  {60000.0 * result.r_star_mw:13.0f}"
        )
    else:
        print(f"  {voll:9.0f}  (no interior optimum: {result})")
