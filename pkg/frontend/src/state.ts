/**
 * Scenario view state: which wind levels are selected, which jobs back them,
 * and the fetched payloads. A monotonically increasing epoch guards against
 * stale responses: every control change bumps the epoch, and in-flight
 * fetches for older epochs are discarded on arrival, so the view only ever
 * renders the payload matching the latest submitted jobs.
 */

import type { ApiClient } from './api.js';
import type {
  DistributionPayload,
  MetricName,
  MetricsPayload,
  ScenarioRequest,
} from './types.js';
import { METRIC_NAMES } from './types.js';

export interface ScenarioControls {
  windLevelsGw: number[];
  targetEeuMwh: number | null;
  alphas: number[];
  nReplications: number;
  seed: number;
  excludedYears: string[];
}

export interface LevelResult {
  windGw: number;
  jobId: string | null;
  status: 'pending' | 'done' | 'failed';
  error?: string;
  metrics?: MetricsPayload;
  distributions: Partial<Record<MetricName, DistributionPayload>>;
}

export type Listener = (state: ScenarioViewState) => void;

export const MAX_OVERLAY_LEVELS = 4;

export function buildRequest(controls: ScenarioControls, windGw: number): ScenarioRequest {
  return {
    wind_gw: windGw,
    target_eeu_mwh: controls.targetEeuMwh,
    alphas: controls.alphas,
    n_replications: controls.nReplications,
    seed: controls.seed,
    excluded_years: [...controls.excludedYears].sort(),
  };
}

export class ScenarioViewState {
  private epoch = 0;
  levels: LevelResult[] = [];
  alpha = 0;
  private listeners: Listener[] = [];

  constructor(private readonly client: ApiClient) {}

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const l of this.listeners) l(this);
  }

  /** Readout α; purely client-side view selection, no resubmission needed. */
  setAlpha(alpha: number): void {
    this.alpha = alpha;
    this.notify();
  }

  currentEpoch(): number {
    return this.epoch;
  }

  /**
   * Submit one job per selected wind level and fetch all payloads. Returns
   * when every level resolved (done or failed) unless superseded.
   */
  async applyControls(controls: ScenarioControls): Promise<void> {
    const myEpoch = ++this.epoch;
    const stale = () => this.epoch !== myEpoch;
    const windLevels = controls.windLevelsGw.slice(0, MAX_OVERLAY_LEVELS);
    this.levels = windLevels.map((gw) => ({
      windGw: gw,
      jobId: null,
      status: 'pending',
      distributions: {},
    }));
    this.notify();

    await Promise.all(
      windLevels.map(async (gw, i) => {
        const level = this.levels[i];
        try {
          const ref = await this.client.createScenario(buildRequest(controls, gw));
          if (stale()) return;
          level.jobId = ref.id;
          this.notify();
          const info = await this.client.waitForJob(ref.id, { isStale: stale });
          if (stale()) return;
          if (info.status === 'failed') {
            level.status = 'failed';
            level.error = info.error ?? 'computation failed';
            this.notify();
            return;
          }
          const metrics = await this.client.getMetrics(ref.id);
          const distributions: LevelResult['distributions'] = {};
          for (const metric of METRIC_NAMES) {
            try {
              distributions[metric] = await this.client.getDistribution(ref.id, metric);
            } catch {
              // metric can have no samples (e.g. no shortfall day anywhere)
            }
          }
          if (stale()) return;
          level.metrics = metrics;
          level.distributions = distributions;
          level.status = 'done';
          this.notify();
        } catch (err) {
          if (stale()) return;
          level.status = 'failed';
          level.error = err instanceof Error ? err.message : String(err);
          this.notify();
        }
      }),
    );
  }

  doneLevels(): LevelResult[] {
    return this.levels.filter((l) => l.status === 'done');
  }

  /** Job id backing the what-if panel: the first completed level. */
  whatIfJobId(): string | null {
    return this.doneLevels()[0]?.jobId ?? null;
  }

  /** Year labels known from any completed job, for exclusion toggles. */
  knownYears(): string[] {
    const years = new Set<string>();
    for (const level of this.doneLevels()) {
      for (const c of level.metrics?.per_year_contributions ?? []) years.add(c.year);
      for (const y of level.metrics?.scenario.excluded_years ?? []) years.add(y);
    }
    return [...years].sort();
  }
}
