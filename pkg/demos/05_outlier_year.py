"""How one calm winter comes to dominate the risk estimate at high wind.

The synthetic dataset's first year ("2005") hides a multi-day episode of
near-zero wind during fairly high demand. At low wind shares the year is
unremarkable; as the share grows, that episode becomes the dominant driver
of EEU, and dropping the year from the record changes the estimated tail of
the energy-unserved distribution drastically. This is the estimation hazard
of hindcast studies: the years that matter most are the rarest.
"""

from adequacy import risk_indices, var_alpha, year_contributions
from adequacy.demo import (
    DEMO_OUTLIER_YEAR,
    DEMO_TARGET_EEU_MWH,
    DEMO_WIND_LEVELS_GW,
    demo_dataset,
    demo_fleet,
    demo_scenario,
)
from adequacy.experiments import calibrate_level, fixed_eeu_outcome, leave_one_out_eu
from adequacy.sequential import eu_distribution

REPS = 1500
fleet = demo_fleet()
dataset = demo_dataset()

print("share of EEU attributable to the calm year, by installed wind:")
for gw in DEMO_WIND_LEVELS_GW:
    level = calibrate_level(fleet, dataset, demo_scenario(gw), gw, DEMO_TARGET_EEU_MWH)
    idx = risk_indices(fleet, dataset, level.scenario, capdist=level.curves.capdist)
    share = year_contributions(idx)[DEMO_OUTLIER_YEAR]
    print(f"  {gw:4g} GW: {share:6.1%}")

print(f"\n0.99 quantile of EU, with vs without {DEMO_OUTLIER_YEAR} "
      f"(recalibrated on the reduced record):")
for i, gw in enumerate((DEMO_WIND_LEVELS_GW[0], DEMO_WIND_LEVELS_GW[-1])):
    level = calibrate_level(fleet, dataset, demo_scenario(gw), gw, DEMO_TARGET_EEU_MWH)
    full = eu_distribution(fixed_eeu_outcome(fleet, dataset, level, REPS, 7, i))
    _, loo_outcome = leave_one_out_eu(
        fleet, dataset, demo_scenario(gw), gw, DEMO_TARGET_EEU_MWH,
        DEMO_OUTLIER_YEAR, REPS, 7, i,
    )
    loo = eu_distribution(loo_outcome)
    q_full, q_loo = var_alpha(full, 0.99), var_alpha(loo, 0.99)
    print(f"  {gw:4g} GW: q99 {q_full:8.0f} MWh -> {q_loo:8.0f} MWh "
          f"(ratio {q_loo / q_full:.2f})")
