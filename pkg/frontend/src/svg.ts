/**
 * Minimal deterministic SVG scaffolding: scales, tick generation and element
 * builders.  Output contains no timestamps or random ids, so rendering the
 * same inputs yields byte-identical files.
 */

export interface Scale {
  (value: number): number;
  ticks(): number[];
}

export function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0 || 1;
  const scale = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  scale.ticks = () => {
    const step = niceStep(span / 5);
    const start = Math.ceil(d0 / step) * step;
    const out: number[] = [];
    for (let v = start; v <= d1 + 1e-9; v += step) out.push(roundTick(v));
    return out;
  };
  return scale;
}

export function logScale(d0: number, d1: number, r0: number, r1: number): Scale {
  if (d0 <= 0 || d1 <= 0) {
    throw new Error(`log scale needs positive domain, got [${d0}, ${d1}]`);
  }
  const l0 = Math.log10(d0);
  const l1 = Math.log10(d1);
  const span = l1 - l0 || 1;
  const scale = ((value: number) => r0 + ((Math.log10(value) - l0) / span) * (r1 - r0)) as Scale;
  scale.ticks = () => {
    const out: number[] = [];
    for (let e = Math.ceil(l0); e <= Math.floor(l1 + 1e-9); e += 1) out.push(10 ** e);
    return out.length >= 2 ? out : [d0, d1];
  };
  return scale;
}

function niceStep(raw: number): number {
  const mag = 10 ** Math.floor(Math.log10(raw));
  const unit = raw / mag;
  if (unit <= 1) return mag;
  if (unit <= 2) return 2 * mag;
  if (unit <= 5) return 5 * mag;
  return 10 * mag;
}

function roundTick(v: number): number {
  return Math.abs(v) < 1e-12 ? 0 : Number(v.toPrecision(10));
}

export function formatTick(v: number): string {
  if (v !== 0 && (Math.abs(v) < 1e-3 || Math.abs(v) >= 1e4)) {
    const exp = Math.round(Math.log10(Math.abs(v)));
    const mantissa = v / 10 ** exp;
    return Math.abs(mantissa - 1) < 1e-9 ? `1e${exp}` : `${round6(mantissa)}e${exp}`;
  }
  return String(round6(v));
}

function round6(v: number): number {
  return Number(v.toFixed(6));
}

const esc = (s: string) => s.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;');

export function el(tag: string, attrs: Record<string, string | number>, body = ''): string {
  const rendered = Object.entries(attrs)
    .map(([key, value]) => `${key}="${typeof value === 'number' ? round2(value) : esc(value)}"`)
    .join(' ');
  return body === '' && tag !== 'text'
    ? `<${tag} ${rendered}/>`
    : `<${tag} ${rendered}>${tag === 'text' ? esc(body) : body}</${tag}>`;
}

function round2(v: number): string {
  return String(Number(v.toFixed(2)));
}

export const PALETTE = ['#1f77b4', '#d62728', '#2ca02c', '#9467bd', '#ff7f0e', '#8c564b'];

export interface Frame {
  width: number;
  height: number;
  left: number;
  right: number;
  top: number;
  bottom: number;
}

export const FRAME: Frame = { width: 640, height: 440, left: 76, right: 160, top: 24, bottom: 56 };

export function axes(frame: Frame, x: Scale, y: Scale, xLabel: string, yLabel: string): string {
  const parts: string[] = [];
  const x0 = frame.left;
  const x1 = frame.width - frame.right;
  const y0 = frame.height - frame.bottom;
  const y1 = frame.top;
  parts.push(el('line', { x1: x0, y1: y0, x2: x1, y2: y0, stroke: '#000' }));
  parts.push(el('line', { x1: x0, y1: y0, x2: x0, y2: y1, stroke: '#000' }));
  for (const t of x.ticks()) {
    const px = x(t);
    parts.push(el('line', { x1: px, y1: y0, x2: px, y2: y0 + 5, stroke: '#000' }));
    parts.push(el('text', { x: px, y: y0 + 20, 'text-anchor': 'middle', 'font-size': 12 }, formatTick(t)));
  }
  for (const t of y.ticks()) {
    const py = y(t);
    parts.push(el('line', { x1: x0 - 5, y1: py, x2: x0, y2: py, stroke: '#000' }));
    parts.push(el('text', { x: x0 - 8, y: py + 4, 'text-anchor': 'end', 'font-size': 12 }, formatTick(t)));
  }
  parts.push(el('text', {
    x: (x0 + x1) / 2, y: frame.height - 12, 'text-anchor': 'middle', 'font-size': 13,
  }, xLabel));
  parts.push(el('text', {
    x: 18, y: (y0 + y1) / 2, 'text-anchor': 'middle', 'font-size': 13,
    transform: `rotate(-90 18 ${(y0 + y1) / 2})`,
  }, yLabel));
  return parts.join('\n');
}

export function errorBar(px: number, pyLow: number, pyHigh: number, color: string): string {
  const cap = 3;
  return [
    el('line', { class: 'errbar', x1: px, y1: pyLow, x2: px, y2: pyHigh, stroke: color }),
    el('line', { x1: px - cap, y1: pyLow, x2: px + cap, y2: pyLow, stroke: color }),
    el('line', { x1: px - cap, y1: pyHigh, x2: px + cap, y2: pyHigh, stroke: color }),
  ].join('\n');
}

export function legend(frame: Frame, labels: string[]): string {
  const x = frame.width - frame.right + 14;
  return labels
    .map((label, i) => {
      const y = frame.top + 16 + i * 18;
      return [
        el('line', { x1: x, y1: y - 4, x2: x + 18, y2: y - 4, stroke: PALETTE[i % PALETTE.length], 'stroke-width': 2 }),
        el('text', { x: x + 24, y, 'font-size': 12 }, label),
      ].join('\n');
    })
    .join('\n');
}

export function document(frame: Frame, body: string): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${frame.width}" height="${frame.height}" viewBox="0 0 ${frame.width} ${frame.height}">`,
    el('rect', { x: 0, y: 0, width: frame.width, height: frame.height, fill: '#fff' }),
    body,
    '</svg>',
  ].join('\n');
}
