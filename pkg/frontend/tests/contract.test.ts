/**
 * End-to-end contract test against a live service instance.
 *
 * Spawns `adequacy serve` on generated demo data, drives it through the
 * dashboard's own client/state/view-model code, and verifies that every
 * rendered number equals the corresponding API payload value:
 *   - the CVaR readout at alpha = 0 equals the displayed EEU,
 *   - doubling VOLL in the what-if panel halves the displayed target LOLE,
 *   - histogram bars equal the payload's bin edges and counts verbatim.
 */

import { spawn, spawnSync, type ChildProcess } from 'node:child_process';
import { mkdtempSync, rmSync, writeFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api.js';
import { histogramChartModel } from '../src/charts.js';
import { cvarReadout, eeuReadout, whatIfView } from '../src/panels.js';
import { ScenarioViewState } from '../src/state.js';

const PORT = 18731;
const BASE = `http://127.0.0.1:${PORT}`;

let workdir: string;
let server: ChildProcess | null = null;
const client = new ApiClient(BASE);

async function waitForHealth(timeoutMs = 60_000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (await client.health()) return;
    await new Promise((r) => setTimeout(r, 200));
  }
  throw new Error('service did not become healthy');
}

beforeAll(async () => {
  workdir = mkdtempSync(join(tmpdir(), 'adequacy-dash-'));
  const gen = spawnSync(
    'python3',
    ['-m', 'adequacy.cli', 'gen-data', '--out-dir', join(workdir, 'data'), '--seed', '505'],
    { stdio: 'inherit' },
  );
  expect(gen.status).toBe(0);
  const config = join(workdir, 'config.yaml');
  writeFileSync(
    config,
    [
      'paths:',
      '  fleet: data/fleet.csv',
      '  demand: data/demand.csv',
      '  wind: data/wind.csv',
      'scenario:',
      '  season_hours: 1344',
    ].join('\n'),
  );
  server = spawn(
    'python3',
    ['-m', 'adequacy.cli', 'serve', '--config', config, '--listen', `127.0.0.1:${PORT}`],
    {
      stdio: 'ignore',
      env: { ...process.env, ADEQUACY_DATA_DIR: join(workdir, 'results') },
    },
  );
  await waitForHealth();
});

afterAll(() => {
  server?.kill('SIGTERM');
  rmSync(workdir, { recursive: true, force: true });
});

describe('dashboard against a running service', () => {
  const state = new ScenarioViewState(client);

  it('completes a scenario run through the view state', async () => {
    await state.applyControls({
      windLevelsGw: [2],
      targetEeuMwh: 3000,
      alphas: [0, 0.25, 0.5, 0.75, 0.9],
      nReplications: 300,
      seed: 11,
      excludedYears: [],
    });
    expect(state.doneLevels()).toHaveLength(1);
  });

  it('alpha=0 CVaR readout equals the displayed EEU', () => {
    const metrics = state.doneLevels()[0].metrics!;
    expect(cvarReadout(metrics, 0)).toBe(eeuReadout(metrics));
  });

  it('rendered histogram values equal the API payload', async () => {
    const level = state.doneLevels()[0];
    const payload = level.distributions.eu!;
    const fresh = await client.getDistribution(level.jobId!, 'eu');
    const model = histogramChartModel('eu', [{ label: '2 GW', payload }]);
    const bars = model.perLevel[0].bars;
    expect(bars.map((b) => b.count)).toEqual(fresh.counts);
    expect(bars.map((b) => b.left)).toEqual(fresh.bin_edges.slice(0, -1));
    expect(bars.map((b) => b.right)).toEqual(fresh.bin_edges.slice(1));
    expect(bars.reduce((acc, b) => acc + b.count, 0)).toBe(300);
  });

  it('doubling VOLL halves the displayed target LOLE', async () => {
    const jobId = state.whatIfJobId()!;
    const base = whatIfView(await client.whatIf(jobId, 60_000, 20_000));
    const doubled = whatIfView(await client.whatIf(jobId, 60_000, 40_000));
    expect(base.targetLoleHours).toBe(3);
    expect(doubled.targetLoleHours).toBe(base.targetLoleHours / 2);
    expect(doubled.loleAtRStarHours).toBeCloseTo(base.loleAtRStarHours / 2, 2);
    expect(doubled.rStarMw).toBeGreaterThanOrEqual(base.rStarMw);
  });

  it('excluding a year round-trips through the API', async () => {
    await state.applyControls({
      windLevelsGw: [2],
      targetEeuMwh: 3000,
      alphas: [0, 0.5],
      nReplications: 200,
      seed: 11,
      excludedYears: ['2005'],
    });
    const metrics = state.doneLevels()[0].metrics!;
    expect(metrics.scenario.excluded_years).toEqual(['2005']);
    expect(metrics.per_year_contributions.map((c) => c.year)).not.toContain('2005');
  });
});
