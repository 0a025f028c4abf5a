// Minimal deterministic SVG builder: fixed canvas, fixed fonts, and all
// coordinates printed through one formatter so identical inputs produce
// identical bytes.

export const WIDTH = 720;
export const HEIGHT = 480;
export const MARGIN = { left: 72, right: 24, top: 32, bottom: 48 };

export function fmt(x: number): string {
  if (!Number.isFinite(x)) return '0';
  if (x === 0) return '0';
  return Number(x.toPrecision(6)).toString();
}

export interface Scale {
  (v: number): number;
  domain: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  let [d0, d1] = domain;
  if (d0 === d1) {
    d0 -= 1;
    d1 += 1;
  }
  const f = ((v: number) => range[0] + ((v - d0) / (d1 - d0)) * (range[1] - range[0])) as Scale;
  f.domain = [d0, d1];
  return f;
}

export function extent(values: number[], pad = 0.05): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (!Number.isFinite(lo) || !Number.isFinite(hi)) return [0, 1];
  const span = hi - lo || Math.abs(hi) || 1;
  return [lo - pad * span, hi + pad * span];
}

export function ticks(lo: number, hi: number, n = 6): number[] {
  const span = hi - lo;
  if (span <= 0) return [lo];
  const raw = span / n;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const norm = raw / mag;
  const step = (norm >= 5 ? 5 : norm >= 2 ? 2 : 1) * mag;
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + 1e-12 * span; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

export const PALETTE = ['#1f6f8b', '#c94f3d', '#5a8f4e', '#8057a1', '#b0842c'];

export class Figure {
  private parts: string[] = [];
  readonly x: Scale;
  readonly y: Scale;

  constructor(xDomain: [number, number], yDomain: [number, number],
              readonly title: string, readonly xLabel: string, readonly yLabel: string) {
    this.x = linearScale(xDomain, [MARGIN.left, WIDTH - MARGIN.right]);
    this.y = linearScale(yDomain, [HEIGHT - MARGIN.bottom, MARGIN.top]);
  }

  add(fragment: string): void {
    this.parts.push(fragment);
  }

  polyline(xs: number[], ys: number[], color: string, dash = ''): void {
    const pts = xs.map((v, i) => `${fmt(this.x(v))},${fmt(this.y(ys[i]))}`).join(' ');
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : '';
    this.add(`<polyline fill="none" stroke="${color}" stroke-width="1.5"${dashAttr} points="${pts}"/>`);
  }

  circles(xs: number[], ys: number[], color: string, r = 3): void {
    for (let i = 0; i < xs.length; i++) {
      this.add(`<circle cx="${fmt(this.x(xs[i]))}" cy="${fmt(this.y(ys[i]))}" r="${r}" fill="${color}"/>`);
    }
  }

  stems(xs: number[], ys: number[], color: string): void {
    const y0 = fmt(this.y(0));
    for (let i = 0; i < xs.length; i++) {
      const cx = fmt(this.x(xs[i]));
      this.add(`<line x1="${cx}" y1="${y0}" x2="${cx}" y2="${fmt(this.y(ys[i]))}" stroke="${color}" stroke-width="1.5"/>`);
      this.add(`<circle cx="${cx}" cy="${fmt(this.y(ys[i]))}" r="3" fill="${color}"/>`);
    }
  }

  legend(entries: Array<[string, string]>): void {
    let yPos = MARGIN.top + 6;
    for (const [label, color] of entries) {
      const xPos = WIDTH - MARGIN.right - 150;
      this.add(`<line x1="${xPos}" y1="${yPos}" x2="${xPos + 18}" y2="${yPos}" stroke="${color}" stroke-width="2"/>`);
      this.add(`<text x="${xPos + 24}" y="${yPos + 4}" class="lbl">${label}</text>`);
      yPos += 16;
    }
  }

  render(): string {
    const axes: string[] = [];
    const x0 = MARGIN.left;
    const x1 = WIDTH - MARGIN.right;
    const y0 = HEIGHT - MARGIN.bottom;
    const y1 = MARGIN.top;
    axes.push(`<line x1="${x0}" y1="${y0}" x2="${x1}" y2="${y0}" stroke="#333"/>`);
    axes.push(`<line x1="${x0}" y1="${y0}" x2="${x0}" y2="${y1}" stroke="#333"/>`);
    for (const t of ticks(this.x.domain[0], this.x.domain[1])) {
      const px = fmt(this.x(t));
      axes.push(`<line x1="${px}" y1="${y0}" x2="${px}" y2="${y0 + 5}" stroke="#333"/>`);
      axes.push(`<text x="${px}" y="${y0 + 18}" text-anchor="middle" class="lbl">${fmt(t)}</text>`);
    }
    for (const t of ticks(this.y.domain[0], this.y.domain[1])) {
      const py = fmt(this.y(t));
      axes.push(`<line x1="${x0 - 5}" y1="${py}" x2="${x0}" y2="${py}" stroke="#333"/>`);
      axes.push(`<text x="${x0 - 8}" y="${py}" text-anchor="end" dominant-baseline="middle" class="lbl">${fmt(t)}</text>`);
    }
    axes.push(`<text x="${(x0 + x1) / 2}" y="${HEIGHT - 12}" text-anchor="middle" class="lbl">${this.xLabel}</text>`);
    axes.push(`<text x="16" y="${(y0 + y1) / 2}" text-anchor="middle" class="lbl" transform="rotate(-90 16 ${(y0 + y1) / 2})">${this.yLabel}</text>`);
    axes.push(`<text x="${(x0 + x1) / 2}" y="20" text-anchor="middle" class="ttl">${this.title}</text>`);
    return [
      `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
      '<style>text{font-family:monospace}.lbl{font-size:11px;fill:#333}.ttl{font-size:13px;fill:#111}</style>',
      `<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`,
      ...axes,
      ...this.parts,
      '</svg>',
      '',
    ].join('\n');
  }
}
