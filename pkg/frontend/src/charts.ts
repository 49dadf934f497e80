/**
 * Chart models and SVG renderers.
 *
 * Model builders are pure payload -> data transformations; the contract test
 * verifies their values equal the API payloads verbatim (no client-side
 * re-binning, no recomputation). Renderers turn models into standalone SVG
 * markup strings, kept separate so they can be unit-tested without a DOM.
 */

import type { CvarPoint, DistributionPayload, YearContribution } from './types.js';

export const LEVEL_COLORS = ['#2563eb', '#d97706', '#dc2626', '#059669'];

export interface SeriesPoint {
  x: number;
  y: number;
}

export interface LineSeries {
  label: string;
  points: SeriesPoint[];
}

export interface LineChartModel {
  series: LineSeries[];
  xLabel: string;
  yLabel: string;
}

export interface HistogramBars {
  label: string;
  bars: { left: number; right: number; count: number }[];
  unit: string;
}

export interface HistogramChartModel {
  metric: string;
  unit: string;
  perLevel: HistogramBars[];
}

export interface ContributionBar {
  year: string;
  fraction: number;
}

export interface ContributionChartModel {
  perLevel: { label: string; bars: ContributionBar[] }[];
}

/** Unit suffix of a field name like cvar_eu_mwh -> "MWh". */
export function unitFromFieldName(field: string): string {
  if (field.endsWith('_mwh')) return 'MWh';
  if (field.endsWith('_hours')) return 'hours';
  if (field.endsWith('_mw')) return 'MW';
  return '';
}

export function unitLabel(unit: string): string {
  return { mwh: 'MWh', hours: 'hours', days: 'days', mw: 'MW' }[unit] ?? unit;
}

export function cvarCurveModel(byLevel: { label: string; curve: CvarPoint[] }[]): LineChartModel {
  return {
    series: byLevel.map(({ label, curve }) => ({
      label,
      points: curve.map((p) => ({ x: p.alpha, y: p.cvar_eu_mwh })),
    })),
    xLabel: 'risk aversion α',
    yLabel: `CVaR of energy unserved (${unitFromFieldName('cvar_eu_mwh')})`,
  };
}

export function histogramChartModel(
  metric: string,
  byLevel: { label: string; payload: DistributionPayload }[],
): HistogramChartModel {
  const unit = byLevel[0]?.payload.unit ?? '';
  return {
    metric,
    unit,
    perLevel: byLevel.map(({ label, payload }) => ({
      label,
      unit: payload.unit,
      bars: payload.counts.map((count, i) => ({
        left: payload.bin_edges[i],
        right: payload.bin_edges[i + 1],
        count,
      })),
    })),
  };
}

export function contributionsModel(
  byLevel: { label: string; contributions: YearContribution[] }[],
): ContributionChartModel {
  return {
    perLevel: byLevel.map(({ label, contributions }) => ({
      label,
      bars: contributions.map((c) => ({ year: c.year, fraction: c.fraction })),
    })),
  };
}

// ---------------------------------------------------------------------------
// SVG rendering

const W = 420;
const H = 260;
const M = { top: 14, right: 12, bottom: 38, left: 58 };

function scale(domainMin: number, domainMax: number, rangeMin: number, rangeMax: number) {
  const span = domainMax - domainMin || 1;
  return (v: number) => rangeMin + ((v - domainMin) / span) * (rangeMax - rangeMin);
}

function axisTicks(min: number, max: number, n = 5): number[] {
  const span = max - min || 1;
  const step = span / (n - 1);
  return Array.from({ length: n }, (_, i) => min + i * step);
}

function fmtTick(v: number): string {
  if (Math.abs(v) >= 10000) return v.toExponential(1);
  if (Number.isInteger(v)) return String(v);
  return v.toPrecision(3);
}

function frame(xLabel: string, yLabel: string, xMin: number, xMax: number, yMax: number): string {
  const sx = scale(xMin, xMax, M.left, W - M.right);
  const sy = scale(0, yMax, H - M.bottom, M.top);
  const parts: string[] = [];
  for (const t of axisTicks(xMin, xMax)) {
    parts.push(
      `<text class="tick" x="${sx(t).toFixed(1)}" y="${H - M.bottom + 16}" text-anchor="middle">${fmtTick(t)}</text>`,
    );
  }
  for (const t of axisTicks(0, yMax)) {
    parts.push(
      `<line class="grid" x1="${M.left}" x2="${W - M.right}" y1="${sy(t).toFixed(1)}" y2="${sy(t).toFixed(1)}"/>`,
      `<text class="tick" x="${M.left - 6}" y="${sy(t).toFixed(1)}" text-anchor="end" dominant-baseline="middle">${fmtTick(t)}</text>`,
    );
  }
  parts.push(
    `<text class="axis-label" x="${(M.left + W - M.right) / 2}" y="${H - 6}" text-anchor="middle">${xLabel}</text>`,
    `<text class="axis-label" x="14" y="${(M.top + H - M.bottom) / 2}" text-anchor="middle" transform="rotate(-90 14 ${(M.top + H - M.bottom) / 2})">${yLabel}</text>`,
  );
  return parts.join('');
}

export function renderLineChartSvg(model: LineChartModel): string {
  const xs = model.series.flatMap((s) => s.points.map((p) => p.x));
  const ys = model.series.flatMap((s) => s.points.map((p) => p.y));
  if (xs.length === 0) return emptySvg('no data');
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const yMax = Math.max(...ys, 1e-9);
  const sx = scale(xMin, xMax, M.left, W - M.right);
  const sy = scale(0, yMax, H - M.bottom, M.top);
  const paths = model.series
    .map((s, i) => {
      const d = s.points
        .map((p, j) => `${j === 0 ? 'M' : 'L'}${sx(p.x).toFixed(1)},${sy(p.y).toFixed(1)}`)
        .join('');
      return `<path class="series" fill="none" stroke="${LEVEL_COLORS[i % LEVEL_COLORS.length]}" stroke-width="2" d="${d}"/>`;
    })
    .join('');
  return svg(frame(model.xLabel, model.yLabel, xMin, xMax, yMax) + paths + legend(model.series.map((s) => s.label)));
}

export function renderHistogramSvg(model: HistogramChartModel): string {
  const all = model.perLevel.flatMap((l) => l.bars);
  if (all.length === 0) return emptySvg('no samples');
  const xMin = Math.min(...all.map((b) => b.left));
  const xMax = Math.max(...all.map((b) => b.right));
  const yMax = Math.max(...all.map((b) => b.count), 1);
  const sx = scale(xMin, xMax, M.left, W - M.right);
  const sy = scale(0, yMax, H - M.bottom, M.top);
  const rects = model.perLevel
    .map((level, i) => {
      const color = LEVEL_COLORS[i % LEVEL_COLORS.length];
      return level.bars
        .filter((b) => b.count > 0)
        .map((b) => {
          const x = sx(b.left);
          const width = Math.max(sx(b.right) - sx(b.left) - 0.5, 0.5);
          const y = sy(b.count);
          return `<rect class="bar" x="${x.toFixed(1)}" y="${y.toFixed(1)}" width="${width.toFixed(1)}" height="${(H - M.bottom - y).toFixed(1)}" fill="${color}" fill-opacity="0.45"/>`;
        })
        .join('');
    })
    .join('');
  const xLabel = `${model.metric} (${unitLabel(model.unit)})`;
  return svg(frame(xLabel, 'replications', xMin, xMax, yMax) + rects + legend(model.perLevel.map((l) => l.label)));
}

export function renderContributionsSvg(model: ContributionChartModel): string {
  const years = [...new Set(model.perLevel.flatMap((l) => l.bars.map((b) => b.year)))].sort();
  if (years.length === 0) return emptySvg('no data');
  const yMax = Math.max(...model.perLevel.flatMap((l) => l.bars.map((b) => b.fraction)), 0.01);
  const sy = scale(0, yMax, H - M.bottom, M.top);
  const groupWidth = (W - M.left - M.right) / years.length;
  const barWidth = Math.max((groupWidth * 0.8) / Math.max(model.perLevel.length, 1), 2);
  const parts: string[] = [];
  years.forEach((year, yi) => {
    const x0 = M.left + yi * groupWidth + groupWidth * 0.1;
    model.perLevel.forEach((level, li) => {
      const bar = level.bars.find((b) => b.year === year);
      if (!bar) return;
      const y = sy(bar.fraction);
      parts.push(
        `<rect class="bar" x="${(x0 + li * barWidth).toFixed(1)}" y="${y.toFixed(1)}" width="${(barWidth * 0.92).toFixed(1)}" height="${(H - M.bottom - y).toFixed(1)}" fill="${LEVEL_COLORS[li % LEVEL_COLORS.length]}"/>`,
      );
    });
    parts.push(
      `<text class="tick" x="${(x0 + groupWidth * 0.4).toFixed(1)}" y="${H - M.bottom + 16}" text-anchor="middle">${year}</text>`,
    );
  });
  for (const t of axisTicks(0, yMax)) {
    parts.push(
      `<text class="tick" x="${M.left - 6}" y="${sy(t).toFixed(1)}" text-anchor="end" dominant-baseline="middle">${fmtTick(t)}</text>`,
    );
  }
  parts.push(
    `<text class="axis-label" x="${(M.left + W - M.right) / 2}" y="${H - 6}" text-anchor="middle">share of EEU by weather year</text>`,
  );
  return svg(parts.join('') + legend(model.perLevel.map((l) => l.label)));
}

function legend(labels: string[]): string {
  return labels
    .map((label, i) => {
      const x = M.left + 8 + i * 92;
      return (
        `<rect x="${x}" y="${M.top}" width="10" height="10" fill="${LEVEL_COLORS[i % LEVEL_COLORS.length]}"/>` +
        `<text class="tick" x="${x + 14}" y="${M.top + 9}">${label}</text>`
      );
    })
    .join('');
}

function svg(inner: string): string {
  return `<svg viewBox="0 0 ${W} ${H}" xmlns="http://www.w3.org/2000/svg">${inner}</svg>`;
}

function emptySvg(note: string): string {
  return svg(`<text class="tick" x="${W / 2}" y="${H / 2}" text-anchor="middle">${note}</text>`);
}
