/**
 * The three figure kinds rendered from entvol CSV results.
 *
 * Each chart has a pure layout step (data -> pixel positions) exposed for
 * testing, and a renderer that wraps the layout into a standalone SVG
 * document with axes, error bars and a legend.
 */

import {
  RunRow,
  SweepRow,
  dimsToBodyDimension,
} from './csv.js';
import {
  FRAME,
  PALETTE,
  Scale,
  axes,
  document as svgDocument,
  el,
  errorBar,
  legend,
  linearScale,
  logScale,
} from './svg.js';

export interface LayoutPoint {
  x: number;
  y: number;
  yLow: number;
  yHigh: number;
  px: number;
  py: number;
  pyLow: number;
  pyHigh: number;
}

export interface Series {
  label: string;
  points: LayoutPoint[];
}

export interface Layout {
  series: Series[];
  x: Scale;
  y: Scale;
}

function plotArea() {
  return {
    x0: FRAME.left,
    x1: FRAME.width - FRAME.right,
    y0: FRAME.height - FRAME.bottom,
    y1: FRAME.top,
  };
}

function layoutSeries(
  raw: { label: string; points: { x: number; y: number; err: number }[] }[],
  x: Scale,
  y: Scale,
  clampLow?: number,
): Series[] {
  return raw.map(({ label, points }) => ({
    label,
    points: points
      .slice()
      .sort((a, b) => a.x - b.x)
      .map((p) => {
        const yLow = clampLow === undefined ? p.y - p.err : Math.max(p.y - p.err, clampLow);
        const yHigh = p.y + p.err;
        return {
          x: p.x, y: p.y, yLow, yHigh,
          px: x(p.x), py: y(p.y), pyLow: y(yLow), pyHigh: y(yHigh),
        };
      }),
  }));
}

function render(layout: Layout, xLabel: string, yLabel: string): string {
  const body: string[] = [axes(FRAME, layout.x, layout.y, xLabel, yLabel)];
  layout.series.forEach((series, i) => {
    const color = PALETTE[i % PALETTE.length];
    if (series.points.length > 1) {
      const path = series.points.map((p) => `${p.px.toFixed(2)},${p.py.toFixed(2)}`).join(' ');
      body.push(el('polyline', { points: path, fill: 'none', stroke: color, 'stroke-width': 1.5 }));
    }
    for (const p of series.points) {
      body.push(errorBar(p.px, p.pyLow, p.pyHigh, color));
      body.push(el('circle', { class: 'datapoint', cx: p.px, cy: p.py, r: 3.2, fill: color }));
    }
  });
  body.push(legend(FRAME, layout.series.map((s) => s.label)));
  return svgDocument(FRAME, body.join('\n'));
}

/** R versus 1/alpha, one curve per family (sweep-alpha CSVs). */
export function alphaSweepLayout(rows: SweepRow[]): Layout {
  const area = plotArea();
  const x = linearScale(0, 1, area.x0, area.x1);
  const y = linearScale(0, 1, area.y0, area.y1);
  const families = [...new Set(rows.map((r) => r.family))];
  const series = layoutSeries(
    families.map((family) => ({
      label: family,
      points: rows
        .filter((r) => r.family === family)
        .map((r) => ({ x: r.oneOverAlpha, y: r.ratio, err: r.stdError })),
    })),
    x,
    y,
  );
  return { series, x, y };
}

export function renderAlphaSweep(rows: SweepRow[]): string {
  return render(alphaSweepLayout(rows), '1/alpha', 'volume ratio R');
}

/** Renyi-criterion R versus body dimension d, one curve per order (run CSVs). */
export function renyiDimsLayout(rows: RunRow[]): Layout {
  const renyi = rows.filter((r) => r.criterion === 'renyi');
  if (renyi.length === 0) {
    throw new Error('no renyi rows in input; need criterion=renyi data');
  }
  const dims = renyi.map((r) => dimsToBodyDimension(r.dims));
  const area = plotArea();
  const x = linearScale(0, Math.max(...dims) * 1.05, area.x0, area.x1);
  const y = linearScale(0, 1, area.y0, area.y1);
  const orders = [...new Set(renyi.map((r) => r.alpha))];
  const series = layoutSeries(
    orders.map((alpha) => ({
      label: `alpha = ${alpha}`,
      points: renyi
        .filter((r) => r.alpha === alpha)
        .map((r) => ({ x: dimsToBodyDimension(r.dims), y: r.ratio, err: r.stdError })),
    })),
    x,
    y,
  );
  return { series, x, y };
}

export function renderRenyiDims(rows: RunRow[]): string {
  return render(renyiDimsLayout(rows), 'body dimension d', 'volume ratio R');
}

/** PPT ratio versus body dimension on a logarithmic R axis (run CSVs). */
export function pptDecayLayout(rows: RunRow[]): Layout {
  const ppt = rows.filter((r) => r.criterion === 'ppt');
  if (ppt.length === 0) {
    throw new Error('no ppt rows in input; need criterion=ppt data');
  }
  const bad = ppt.find((r) => r.ratio <= 0);
  if (bad) {
    throw new Error(
      `ppt ratio for dims ${bad.dims} is ${bad.ratio}; a zero count cannot be placed on a log axis`,
    );
  }
  const dims = ppt.map((r) => dimsToBodyDimension(r.dims));
  const ratios = ppt.map((r) => r.ratio);
  const area = plotArea();
  const x = linearScale(0, Math.max(...dims) * 1.05, area.x0, area.x1);
  const yMin = Math.min(...ratios);
  const y = logScale(yMin / 3, 1, area.y0, area.y1);
  const series = layoutSeries(
    [{
      label: 'PPT',
      points: ppt.map((r) => ({ x: dimsToBodyDimension(r.dims), y: r.ratio, err: r.stdError })),
    }],
    x,
    y,
    yMin / 3,  // keep error bars on the log axis
  );
  return { series, x, y };
}

export function renderPptDecay(rows: RunRow[]): string {
  return render(pptDecayLayout(rows), 'body dimension d', 'volume ratio R (log)');
}
