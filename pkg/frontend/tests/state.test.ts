import { describe, expect, it } from 'vitest';

import type { ApiClient } from '../src/api.js';
import { ScenarioViewState, buildRequest } from '../src/state.js';
import type { JobInfo, JobRef, MetricsPayload } from '../src/types.js';

const controls = {
  windLevelsGw: [2],
  targetEeuMwh: 3000,
  alphas: [0, 0.5],
  nReplications: 100,
  seed: 7,
  excludedYears: ['2006', '2005'],
};

function fakeMetrics(eeu: number): MetricsPayload {
  return {
    lole_hours: 1,
    eeu_mwh: eeu,
    analytic: { lole_hours: 1, eeu_mwh: eeu },
    calibration: null,
    cvar_curve: [{ alpha: 0, cvar_eu_mwh: eeu }],
    per_year_contributions: [{ year: '2005', fraction: 1 }],
    scenario: {
      wind_gw: 2,
      demand_shift_mw: 0,
      n_replications: 100,
      seed: 7,
      excluded_years: [],
    },
  };
}

/** Minimal fake client: job ids encode the submitted payload's seed. */
function fakeClient(log: string[], gate: { release?: () => void } = {}): ApiClient {
  let counter = 0;
  return {
    async createScenario(req): Promise<JobRef> {
      const id = `job-${req.seed}-${counter++}`;
      log.push(`create:${id}`);
      return { id, status: 'queued' };
    },
    async getJob(id): Promise<JobInfo> {
      return { id, status: 'done', error: null, request: {} as never };
    },
    async waitForJob(id: string): Promise<JobInfo> {
      if (gate.release === undefined) {
        return { id, status: 'done', error: null, request: {} as never };
      }
      await new Promise<void>((resolve) => {
        gate.release = () => resolve();
      });
      return { id, status: 'done', error: null, request: {} as never };
    },
    async getMetrics(id: string): Promise<MetricsPayload> {
      log.push(`metrics:${id}`);
      return fakeMetrics(Number(id.split('-')[1]));
    },
    async getDistribution(): Promise<never> {
      throw new Error('no samples');
    },
    async whatIf(): Promise<never> {
      throw new Error('unused');
    },
    async health(): Promise<boolean> {
      return true;
    },
  } as unknown as ApiClient;
}

describe('buildRequest', () => {
  it('sorts excluded years and carries all controls', () => {
    const req = buildRequest(controls, 2);
    expect(req.excluded_years).toEqual(['2005', '2006']);
    expect(req.wind_gw).toBe(2);
    expect(req.n_replications).toBe(100);
  });
});

describe('stale response guard', () => {
  it('renders only the payload of the latest submission', async () => {
    const log: string[] = [];
    const gate: { release?: () => void } = { release: undefined };
    const client = fakeClient(log, gate);
    const state = new ScenarioViewState(client);

    // first submission blocks inside waitForJob
    const first = state.applyControls({ ...controls, seed: 1 });
    await new Promise((r) => setTimeout(r, 10));
    // second submission supersedes it and completes immediately
    const gate2: { release?: () => void } = {};
    (client as unknown as { waitForJob: unknown }).waitForJob = async (id: string) => ({
      id,
      status: 'done',
      error: null,
      request: {} as never,
    });
    const second = state.applyControls({ ...controls, seed: 2 });
    await second;
    expect(state.doneLevels()).toHaveLength(1);
    expect(state.doneLevels()[0].metrics?.eeu_mwh).toBe(2);

    // releasing the stale job must not overwrite the newer result
    gate.release?.();
    await first;
    expect(state.doneLevels()[0].metrics?.eeu_mwh).toBe(2);
    void gate2;
  });

  it('caps the overlay at four levels', async () => {
    const state = new ScenarioViewState(fakeClient([]));
    await state.applyControls({ ...controls, windLevelsGw: [1, 2, 3, 4, 5, 6] });
    expect(state.levels).toHaveLength(4);
  });
});
