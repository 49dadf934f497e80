import { describe, expect, it } from 'vitest';

import {
  contributionsModel,
  cvarCurveModel,
  histogramChartModel,
  renderContributionsSvg,
  renderHistogramSvg,
  renderLineChartSvg,
  unitFromFieldName,
  unitLabel,
} from '../src/charts.js';
import type { DistributionPayload } from '../src/types.js';

const payload: DistributionPayload = {
  metric: 'eu',
  unit: 'mwh',
  bin_edges: [0, 10, 20, 30],
  counts: [5, 0, 2],
  n_samples: 7,
  quantiles: { '0.5': 3, '0.9': 22, '0.95': 25, '0.99': 28 },
  mean: 6.5,
};

describe('chart models are verbatim payload views', () => {
  it('histogram bars reproduce server bin edges and counts exactly', () => {
    const model = histogramChartModel('eu', [{ label: '4 GW', payload }]);
    expect(model.perLevel).toHaveLength(1);
    const bars = model.perLevel[0].bars;
    expect(bars.map((b) => b.count)).toEqual(payload.counts);
    expect(bars.map((b) => b.left)).toEqual(payload.bin_edges.slice(0, -1));
    expect(bars.map((b) => b.right)).toEqual(payload.bin_edges.slice(1));
    expect(model.unit).toBe('mwh');
  });

  it('cvar curve points reproduce (alpha, cvar) pairs exactly', () => {
    const curve = [
      { alpha: 0, cvar_eu_mwh: 100.5 },
      { alpha: 0.5, cvar_eu_mwh: 180.25 },
    ];
    const model = cvarCurveModel([{ label: '1 GW', curve }]);
    expect(model.series[0].points).toEqual([
      { x: 0, y: 100.5 },
      { x: 0.5, y: 180.25 },
    ]);
  });

  it('contribution bars reproduce year fractions exactly', () => {
    const contributions = [
      { year: '2005', fraction: 0.7 },
      { year: '2006', fraction: 0.3 },
    ];
    const model = contributionsModel([{ label: '8 GW', contributions }]);
    expect(model.perLevel[0].bars).toEqual([
      { year: '2005', fraction: 0.7 },
      { year: '2006', fraction: 0.3 },
    ]);
  });
});

describe('unit labels come from payload metadata', () => {
  it('maps unit codes', () => {
    expect(unitLabel('mwh')).toBe('MWh');
    expect(unitLabel('hours')).toBe('hours');
    expect(unitLabel('days')).toBe('days');
  });

  it('derives units from field-name suffixes', () => {
    expect(unitFromFieldName('cvar_eu_mwh')).toBe('MWh');
    expect(unitFromFieldName('lole_hours')).toBe('hours');
    expect(unitFromFieldName('r_star_mw')).toBe('MW');
  });
});

describe('svg renderers', () => {
  it('renders one rect per nonzero histogram bar', () => {
    const svg = renderHistogramSvg(histogramChartModel('eu', [{ label: 'x', payload }]));
    const rects = svg.match(/<rect class="bar"/g) ?? [];
    expect(rects).toHaveLength(2); // bars with count 5 and 2; zero-count bin skipped
    expect(svg).toContain('MWh');
  });

  it('renders a path per series and survives empty input', () => {
    const svg = renderLineChartSvg(
      cvarCurveModel([
        { label: 'a', curve: [{ alpha: 0, cvar_eu_mwh: 1 }, { alpha: 0.5, cvar_eu_mwh: 2 }] },
        { label: 'b', curve: [{ alpha: 0, cvar_eu_mwh: 3 }, { alpha: 0.5, cvar_eu_mwh: 4 }] },
      ]),
    );
    expect(svg.match(/<path class="series"/g)).toHaveLength(2);
    expect(renderLineChartSvg(cvarCurveModel([]))).toContain('no data');
  });

  it('renders grouped contribution bars', () => {
    const svg = renderContributionsSvg(
      contributionsModel([
        { label: 'low', contributions: [{ year: '2005', fraction: 0.2 }] },
        { label: 'high', contributions: [{ year: '2005', fraction: 0.9 }] },
      ]),
    );
    expect(svg.match(/<rect class="bar"/g)).toHaveLength(2);
    expect(svg).toContain('2005');
  });
});
