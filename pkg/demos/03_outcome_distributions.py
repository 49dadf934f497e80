"""Full outcome distributions at a fixed headline EEU.

Expected-value indices hide how outcomes are distributed. Here each wind
level is first shifted to the same EEU (a controlled comparison), then the
sequential Monte Carlo produces distributions of shortfall duration, energy
unserved, shortfall-day counts and EU within shortfall days. Higher wind
shares at the same EEU concentrate the risk: fewer days, deeper shortfalls,
fatter EU tail.
"""

from adequacy import cvar_alpha, summary
from adequacy.demo import DEMO_TARGET_EEU_MWH, DEMO_WIND_LEVELS_GW, demo_dataset, demo_fleet, demo_scenario
from adequacy.experiments import calibrate_level, fixed_eeu_outcome
from adequacy.sequential import (
    eu_distribution,
    eu_within_day_distribution,
    lold_distribution,
    shortfall_days_distribution,
)

REPS = 1500
fleet = demo_fleet()
dataset = demo_dataset()

print(f"calibrating each wind level to EEU = {DEMO_TARGET_EEU_MWH:.0f} MWh/season, {REPS} replications\n")
for i, gw in enumerate(DEMO_WIND_LEVELS_GW):
    level = calibrate_level(fleet, dataset, demo_scenario(gw), gw, DEMO_TARGET_EEU_MWH)
    outcome = fixed_eeu_outcome(fleet, dataset, level, REPS, seed=7, level_index=i)

    eu = eu_distribution(outcome)
    lold = lold_distribution(outcome)
    days = shortfall_days_distribution(outcome)
    per_day = eu_within_day_distribution(outcome)

    print(f"wind {gw:g} GW  (shift {level.calibration.shift_mw:+.0f} MW)")
    print(f"  mean EU {eu.mean():7.0f} MWh   q95 {summary(eu)['quantiles'][0.95]:8.0f}"
          f"   CVaR_0.95 {cvar_alpha(eu, 0.95):8.0f}")
    print(f"  mean LOLD {lold.mean():5.2f} h    P(no shortfall) "
          f"{(lold.values == 0).mean():.2f}")
    print(f"  shortfall days/season {days.mean():.2f}, EU per shortfall day "
          f"{per_day.mean():7.0f} MWh\n")
