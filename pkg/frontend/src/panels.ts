/**
 * Panel view-models and readout formatting.
 *
 * Everything displayed is a value from an API payload (or an exact echo of
 * user inputs); these helpers only select and format, never recompute risk.
 */

import type { LevelResult } from './state.js';
import type { MetricsPayload, WhatIfSolution } from './types.js';

export function fmt(value: number, digits = 1): string {
  return value.toLocaleString('en-GB', {
    minimumFractionDigits: digits,
    maximumFractionDigits: digits,
  });
}

export function levelLabel(windGw: number): string {
  return `${windGw} GW`;
}

/** EEU readout: the headline expected energy unserved of the scenario. */
export function eeuReadout(metrics: MetricsPayload): number {
  return metrics.eeu_mwh;
}

/**
 * CVaR readout at the selected α, taken from the server-computed curve.
 * At α = 0 this equals the EEU readout identically (mean of the same
 * distribution, computed server-side).
 */
export function cvarReadout(metrics: MetricsPayload, alpha: number): number | null {
  const exact = metrics.cvar_curve.find((p) => p.alpha === alpha);
  if (exact) return exact.cvar_eu_mwh;
  // nearest grid point; the slider snaps to the request's alpha grid
  let best: { d: number; v: number } | null = null;
  for (const p of metrics.cvar_curve) {
    const d = Math.abs(p.alpha - alpha);
    if (!best || d < best.d) best = { d, v: p.cvar_eu_mwh };
  }
  return best?.v ?? null;
}

export interface WhatIfView {
  targetLoleHours: number;
  rStarMw: number;
  loleAtRStarHours: number;
  eeuAtRStarMwh: number;
  totalCost: number;
  ratioNote: string;
}

/** What-if panel view, annotating the optimality ratio CONE/VOLL. */
export function whatIfView(solution: WhatIfSolution): WhatIfView {
  return {
    targetLoleHours: solution.target_lole_hours,
    rStarMw: solution.r_star_mw,
    loleAtRStarHours: solution.lole_at_r_star_hours,
    eeuAtRStarMwh: solution.eeu_at_r_star_mwh,
    totalCost: solution.total_cost,
    ratioNote:
      `at the cost optimum, LOLE(r*) = CONE / VOLL = ` +
      `${fmt(solution.cone_per_mw_year, 0)} / ${fmt(solution.voll_per_mwh, 0)} = ` +
      `${fmt(solution.target_lole_hours, 3)} h`,
  };
}

export interface SummaryRow {
  label: string;
  loleHours: number;
  eeuMwh: number;
  cvarMwh: number | null;
  shiftMw: number | null;
}

export function summaryRows(levels: LevelResult[], alpha: number): SummaryRow[] {
  return levels
    .filter((l) => l.metrics)
    .map((l) => ({
      label: levelLabel(l.windGw),
      loleHours: l.metrics!.lole_hours,
      eeuMwh: eeuReadout(l.metrics!),
      cvarMwh: cvarReadout(l.metrics!, alpha),
      shiftMw: l.metrics!.calibration?.shift_mw ?? null,
    }));
}
