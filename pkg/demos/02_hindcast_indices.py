"""Hindcast LOLE/EEU on the synthetic weather years, and who drives them.

Each historic year is played against the fleet's capacity distribution; the
headline indices are unweighted means across years. The per-year breakdown
already hints at the headline problem with means: a handful of years carry
most of the risk.
"""

from adequacy import risk_indices, year_contributions
from adequacy.demo import demo_dataset, demo_fleet, demo_scenario

fleet = demo_fleet()
dataset = demo_dataset()
scenario = demo_scenario(wind_gw=4.0, shift_mw=-2000.0)

idx = risk_indices(fleet, dataset, scenario)
print(f"scenario: {scenario.wind_total_gw:g} GW wind, shift {scenario.demand_shift_mw:g} MW")
print(f"LOLE = {idx.lole_hours_per_period:.3f} h/season")
print(f"EEU  = {idx.eeu_mwh_per_period:.1f} MWh/season\n")

contrib = year_contributions(idx)
print("year    LOLE_y (h)   EEU_y (MWh)   share of EEU")
for year, (lole, eeu) in idx.per_year.items():
    print(f"{year}   {lole:9.3f}   {eeu:11.1f}   {contrib[year]:8.1%}")
