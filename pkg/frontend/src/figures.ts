import { CsvError, numberColumn, parseCsv, textColumn } from './csv.js';
import { Figure, MARGIN, PALETTE, WIDTH, extent, fmt, linearScale } from './svg.js';

export const FIGURE_KINDS = [
  'spectrum-stem',
  'coercivity-bars',
  'virial-trace',
  'decay',
  'vacuum-overlay',
] as const;

export type FigureKind = (typeof FIGURE_KINDS)[number];

export interface RenderResult {
  svg: string;
  // vacuum-overlay exposes the analytic curve it drew so callers can
  // verify it against the closed form
  analytic?: Array<{ k: number; rate: number }>;
}

export function growthRate(k: number): number {
  return Math.abs(k) * Math.sqrt(Math.max(0, 1 - k * k));
}

function spectrumStem(csv: string): RenderResult {
  const table = parseCsv(csv);
  const idx = numberColumn(table, 'index');
  const lam = numberColumn(table, 'lambda_richardson');
  const fig = new Figure(extent(idx), extent([0, ...lam]),
    'lowest eigenvalues of the linearized operator', 'index', 'eigenvalue');
  fig.stems(idx, lam, PALETTE[0]);
  // continuum edge marker at 2
  fig.polyline(fig.x.domain, [2, 2], PALETTE[1], '4 3');
  return { svg: fig.render() };
}

function coercivityBars(csv: string): RenderResult {
  const table = parseCsv(csv);
  const names = textColumn(table, 'quotient');
  const mins = numberColumn(table, 'minimum');
  const fig = new Figure([0, names.length], extent([0, ...mins]),
    'coercivity quotients', '', 'constrained minimum');
  const y0 = fig.y(0);
  for (let i = 0; i < names.length; i++) {
    const xl = fig.x(i + 0.15);
    const xr = fig.x(i + 0.85);
    const yv = fig.y(mins[i]);
    const top = Math.min(yv, y0);
    fig.add(`<rect x="${fmt(xl)}" y="${fmt(top)}" width="${fmt(xr - xl)}" height="${fmt(Math.abs(y0 - yv))}" fill="${PALETTE[i % PALETTE.length]}"/>`);
    fig.add(`<text x="${fmt((xl + xr) / 2)}" y="${fmt(y0 + 30)}" text-anchor="middle" class="lbl" transform="rotate(-18 ${fmt((xl + xr) / 2)} ${fmt(y0 + 30)})">${names[i]}</text>`);
  }
  return { svg: fig.render() };
}

function virialTrace(csv: string): RenderResult {
  const table = parseCsv(csv);
  const t = numberColumn(table, 't');
  const series: Array<[string, number[]]> = ['I', 'J', 'M', 'N', 'Hfunc'].map(
    (name) => [name, numberColumn(table, name)]);
  const all = series.flatMap(([, v]) => v);
  const fig = new Figure(extent(t), extent(all),
    'virial functionals along the trajectory', 't', 'value');
  series.forEach(([name, v], i) => fig.polyline(t, v, PALETTE[i % PALETTE.length]));
  fig.legend(series.map(([name], i) => [name, PALETTE[i % PALETTE.length]]));
  return { svg: fig.render() };
}

function decay(csv: string): RenderResult {
  const table = parseCsv(csv);
  const t = numberColumn(table, 't');
  const floor = 1e-20;
  const logs = (v: number[]) => v.map((x) => Math.log10(Math.max(x, floor)));
  const k1 = logs(numberColumn(table, 'K1'));
  const k2 = logs(numberColumn(table, 'K2'));
  const sech = logs(numberColumn(table, 'sechIntegrand'));
  const fig = new Figure(extent(t), extent([...k1, ...k2, ...sech]),
    'local decay functionals', 't', 'log10 value');
  fig.polyline(t, k1, PALETTE[0]);
  fig.polyline(t, k2, PALETTE[1]);
  fig.polyline(t, sech, PALETTE[2]);
  fig.legend([['K1', PALETTE[0]], ['K2', PALETTE[1]], ['sech integrand', PALETTE[2]]]);
  return { svg: fig.render() };
}

function vacuumOverlay(csv: string): RenderResult {
  const table = parseCsv(csv);
  const k = numberColumn(table, 'k');
  const measured = numberColumn(table, 'measured_rate');
  const analytic = k.map((kv) => ({ k: kv, rate: growthRate(kv) }));
  // dense closed-form curve over the sampled range
  const kMax = Math.max(...k, 1.0);
  const dense: number[] = [];
  for (let i = 0; i <= 200; i++) dense.push((i / 200) * kMax);
  const fig = new Figure(extent([0, ...k]), extent([0, ...measured, 0.55]),
    'vacuum growth rates vs |k| sqrt(1-k^2)', 'k', 'growth rate');
  fig.polyline(dense, dense.map(growthRate), PALETTE[1]);
  fig.circles(k, measured, PALETTE[0]);
  fig.circles(analytic.map((p) => p.k), analytic.map((p) => p.rate), PALETTE[1], 1.5);
  fig.legend([['measured', PALETTE[0]], ['closed form', PALETTE[1]]]);
  return { svg: fig.render(), analytic };
}

const RENDERERS: Record<FigureKind, (csv: string) => RenderResult> = {
  'spectrum-stem': spectrumStem,
  'coercivity-bars': coercivityBars,
  'virial-trace': virialTrace,
  decay,
  'vacuum-overlay': vacuumOverlay,
};

export function renderFigure(kind: string, csv: string): RenderResult {
  const renderer = RENDERERS[kind as FigureKind];
  if (!renderer) {
    throw new CsvError(`unknown figure kind: ${kind} (choose from ${FIGURE_KINDS.join(', ')})`);
  }
  return renderer(csv);
}
