/**
 * API payload types, mirroring the service JSON schemas.
 * Units are embedded in field names (…_mwh, …_hours) or carried in `unit`.
 */

export type JobStatus = 'queued' | 'running' | 'done' | 'failed';

export type MetricName = 'lold' | 'eu' | 'shortfall_days' | 'eu_within_day';

export const METRIC_NAMES: MetricName[] = ['lold', 'eu', 'shortfall_days', 'eu_within_day'];

export interface ScenarioRequest {
  wind_gw: number;
  target_eeu_mwh: number | null;
  alphas: number[];
  n_replications: number;
  seed: number;
  excluded_years: string[];
}

export interface JobRef {
  id: string;
  status: JobStatus;
}

export interface JobInfo extends JobRef {
  error: string | null;
  request: ScenarioRequest;
}

export interface CvarPoint {
  alpha: number;
  cvar_eu_mwh: number;
}

export interface YearContribution {
  year: string;
  fraction: number;
}

export interface MetricsPayload {
  lole_hours: number;
  eeu_mwh: number;
  analytic: { lole_hours: number; eeu_mwh: number };
  calibration: { shift_mw: number; eeu_mwh: number } | null;
  cvar_curve: CvarPoint[];
  per_year_contributions: YearContribution[];
  scenario: {
    wind_gw: number;
    demand_shift_mw: number;
    n_replications: number;
    seed: number;
    excluded_years: string[];
  };
}

export interface DistributionPayload {
  metric: MetricName;
  unit: string;
  bin_edges: number[];
  counts: number[];
  n_samples: number;
  quantiles: Record<string, number>;
  mean: number;
}

export interface WhatIfSolution {
  cone_per_mw_year: number;
  voll_per_mwh: number;
  target_lole_hours: number;
  r_star_mw: number;
  lole_at_r_star_hours: number;
  eeu_at_r_star_mwh: number;
  total_cost: number;
}
