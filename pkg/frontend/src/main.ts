/**
 * Dashboard bootstrap: wires the controls to the service API and renders
 * every panel from the latest completed jobs. Pure view/controller: all
 * numbers displayed are server-computed payload values.
 */

import { ApiClient } from './api.js';
import {
  contributionsModel,
  cvarCurveModel,
  histogramChartModel,
  renderContributionsSvg,
  renderHistogramSvg,
  renderLineChartSvg,
} from './charts.js';
import { fmt, levelLabel, summaryRows, whatIfView } from './panels.js';
import { ScenarioViewState, type ScenarioControls } from './state.js';
import { METRIC_NAMES } from './types.js';

const $ = <T extends HTMLElement = HTMLElement>(sel: string): T => {
  const el = document.querySelector<T>(sel);
  if (!el) throw new Error(`missing element ${sel}`);
  return el;
};

const client = new ApiClient('');
const state = new ScenarioViewState(client);

const DEFAULT_ALPHAS = Array.from({ length: 20 }, (_, i) => Math.round(i * 5) / 100);

function readControls(): ScenarioControls {
  const windLevels = ($('#wind-levels') as HTMLInputElement).value
    .split(',')
    .map((s) => Number(s.trim()))
    .filter((x) => Number.isFinite(x) && x >= 0);
  const excluded = [...document.querySelectorAll<HTMLInputElement>('[data-year-toggle]')]
    .filter((el) => el.checked)
    .map((el) => el.dataset.yearToggle!);
  return {
    windLevelsGw: windLevels,
    targetEeuMwh: Number(($('#target-eeu') as HTMLInputElement).value) || null,
    alphas: DEFAULT_ALPHAS,
    nReplications: Number(($('#replications') as HTMLInputElement).value) || 1000,
    seed: Number(($('#seed') as HTMLInputElement).value) || 0,
    excludedYears: excluded,
  };
}

function renderStatus(): void {
  const parts = state.levels.map((l) => {
    const tag = l.status === 'done' ? 'ok' : l.status === 'failed' ? 'err' : 'busy';
    const note = l.status === 'failed' ? ` (${l.error})` : '';
    return `<span class="status ${tag}">${levelLabel(l.windGw)}: ${l.status}${note}</span>`;
  });
  $('#status-line').innerHTML = parts.join(' ') || '<span class="status">idle</span>';
}

function renderSummary(): void {
  const rows = summaryRows(state.doneLevels(), state.alpha);
  const body = rows
    .map(
      (r) => `
      <tr><td>${r.label}</td>
      <td>${fmt(r.loleHours, 2)}</td>
      <td>${fmt(r.eeuMwh, 0)}</td>
      <td id="cvar-readout-${r.label.replace(/\s/g, '')}">${r.cvarMwh === null ? 'n/a' : fmt(r.cvarMwh, 0)}</td>
      <td>${r.shiftMw === null ? 'n/a' : fmt(r.shiftMw, 0)}</td></tr>`,
    )
    .join('');
  $('#summary-table tbody').innerHTML = body;
  $('#alpha-value').textContent = state.alpha.toFixed(2);
}

function renderCharts(): void {
  const done = state.doneLevels();
  $('#cvar-chart').innerHTML = renderLineChartSvg(
    cvarCurveModel(
      done.map((l) => ({ label: levelLabel(l.windGw), curve: l.metrics!.cvar_curve })),
    ),
  );
  for (const metric of METRIC_NAMES) {
    const byLevel = done
      .filter((l) => l.distributions[metric])
      .map((l) => ({ label: levelLabel(l.windGw), payload: l.distributions[metric]! }));
    $(`#hist-${metric}`).innerHTML = renderHistogramSvg(histogramChartModel(metric, byLevel));
  }
  $('#contrib-chart').innerHTML = renderContributionsSvg(
    contributionsModel(
      done.map((l) => ({
        label: levelLabel(l.windGw),
        contributions: l.metrics!.per_year_contributions,
      })),
    ),
  );
}

function renderYearToggles(): void {
  const container = $('#year-toggles');
  const current = new Set(
    [...document.querySelectorAll<HTMLInputElement>('[data-year-toggle]')]
      .filter((el) => el.checked)
      .map((el) => el.dataset.yearToggle!),
  );
  const excludedNow = new Set(
    state.doneLevels().flatMap((l) => l.metrics?.scenario.excluded_years ?? []),
  );
  const years = state.knownYears();
  if (years.length === 0) return;
  container.innerHTML = years
    .map((y) => {
      const checked = current.has(y) || excludedNow.has(y) ? 'checked' : '';
      return `<label class="toggle"><input type="checkbox" data-year-toggle="${y}" ${checked}/> exclude ${y}</label>`;
    })
    .join('');
  for (const el of container.querySelectorAll<HTMLInputElement>('[data-year-toggle]')) {
    el.addEventListener('change', submit);
  }
}

function render(): void {
  renderStatus();
  renderSummary();
  renderCharts();
  renderYearToggles();
}

async function submit(): Promise<void> {
  try {
    await state.applyControls(readControls());
  } catch (err) {
    $('#status-line').innerHTML = `<span class="status err">${String(err)}</span>`;
  }
}

async function runWhatIf(): Promise<void> {
  const jobId = state.whatIfJobId();
  const out = $('#whatif-result');
  if (!jobId) {
    out.innerHTML = '<p class="note">run a scenario first</p>';
    return;
  }
  const cone = Number(($('#cone') as HTMLInputElement).value);
  const voll = Number(($('#voll') as HTMLInputElement).value);
  out.innerHTML = '<p class="note">solving…</p>';
  try {
    const view = whatIfView(await client.whatIf(jobId, cone, voll));
    out.innerHTML = `
      <dl>
        <dt>target LOLE</dt><dd id="whatif-target-lole">${fmt(view.targetLoleHours, 3)} h</dd>
        <dt>optimal shift r*</dt><dd id="whatif-rstar">${fmt(view.rStarMw, 1)} MW</dd>
        <dt>LOLE(r*)</dt><dd id="whatif-lole">${fmt(view.loleAtRStarHours, 3)} h</dd>
        <dt>EEU(r*)</dt><dd id="whatif-eeu">${fmt(view.eeuAtRStarMwh, 0)} MWh</dd>
        <dt>total cost</dt><dd id="whatif-cost">${fmt(view.totalCost, 0)}</dd>
      </dl>
      <p class="note">${view.ratioNote}</p>`;
  } catch (err) {
    out.innerHTML = `<p class="note err">${err instanceof Error ? err.message : String(err)} <button id="whatif-retry">retry</button></p>`;
    document.querySelector('#whatif-retry')?.addEventListener('click', runWhatIf);
  }
}

export function bootstrap(): void {
  state.onChange(render);
  $('#run-button').addEventListener('click', submit);
  $('#whatif-button').addEventListener('click', runWhatIf);
  const alphaSlider = $('#alpha-slider') as HTMLInputElement;
  alphaSlider.addEventListener('input', () => {
    // snap to the request's alpha grid so the readout is an exact curve point
    const raw = Number(alphaSlider.value);
    const snapped = DEFAULT_ALPHAS.reduce((a, b) =>
      Math.abs(b - raw) < Math.abs(a - raw) ? b : a,
    );
    state.setAlpha(snapped);
  });
  void client.health().then((ok) => {
    if (!ok) {
      $('#status-line').innerHTML =
        '<span class="status err">service unreachable; is `adequacy serve` running?</span>';
    }
  });
}

if (typeof document !== 'undefined' && document.readyState !== 'loading') {
  bootstrap();
} else if (typeof document !== 'undefined') {
  document.addEventListener('DOMContentLoaded', bootstrap);
}
