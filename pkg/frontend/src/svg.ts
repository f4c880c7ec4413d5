/** Minimal deterministic SVG scene builder.
 *
 * Figures are plain strings assembled with fixed-precision coordinates, so a
 * given input always renders to the identical byte sequence.
 */

const PRECISION = 6;

export function fmt(x: number): string {
  if (!Number.isFinite(x)) {
    return "0";
  }
  const s = x.toPrecision(PRECISION);
  return s.includes(".") || s.includes("e")
    ? s.replace(/\.?0+($|e)/, "$1")
    : s;
}

export interface Margins {
  left: number;
  right: number;
  top: number;
  bottom: number;
}

export class Scene {
  readonly width: number;
  readonly height: number;
  private parts: string[] = [];

  constructor(width: number, height: number) {
    this.width = width;
    this.height = height;
  }

  add(part: string): void {
    this.parts.push(part);
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke: string, width = 1): void {
    this.add(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ` +
        `stroke="${stroke}" stroke-width="${fmt(width)}"/>`,
    );
  }

  polyline(points: Array<[number, number]>, stroke: string, width = 1.5, dash = ""): void {
    const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
    this.add(`<polyline points="${pts}" fill="none" stroke="${stroke}" stroke-width="${fmt(width)}"${dashAttr}/>`);
  }

  rect(x: number, y: number, w: number, h: number, fill: string): void {
    this.add(`<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" fill="${fill}"/>`);
  }

  circle(x: number, y: number, r: number, fill: string): void {
    this.add(`<circle cx="${fmt(x)}" cy="${fmt(y)}" r="${fmt(r)}" fill="${fill}"/>`);
  }

  text(x: number, y: number, content: string, size = 11, anchor = "start", fill = "#222"): void {
    this.add(
      `<text x="${fmt(x)}" y="${fmt(y)}" font-size="${size}" text-anchor="${anchor}" ` +
        `font-family="sans-serif" fill="${fill}">${escapeXml(content)}</text>`,
    );
  }

  render(): string {
    return (
      `<svg xmlns="http://www.w3.org/2000/svg" width="${this.width}" height="${this.height}" ` +
      `viewBox="0 0 ${this.width} ${this.height}">\n<rect width="100%" height="100%" fill="white"/>\n` +
      this.parts.join("\n") +
      "\n</svg>\n"
    );
  }
}

export function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export interface Axes {
  toX(v: number): number;
  toY(v: number): number;
  x0: number;
  x1: number;
  y0: number;
  y1: number;
}

/** Linear axes over the drawing area with ticks and labels. */
export function drawAxes(
  scene: Scene,
  m: Margins,
  xRange: [number, number],
  yRange: [number, number],
  xLabel: string,
  yLabel: string,
  ticks = 5,
): Axes {
  const x0 = m.left;
  const x1 = scene.width - m.right;
  const y0 = scene.height - m.bottom;
  const y1 = m.top;
  const [xa, xb] = spread(xRange);
  const [ya, yb] = spread(yRange);
  const toX = (v: number) => x0 + ((v - xa) / (xb - xa)) * (x1 - x0);
  const toY = (v: number) => y0 - ((v - ya) / (yb - ya)) * (y0 - y1);
  scene.line(x0, y0, x1, y0, "#444");
  scene.line(x0, y0, x0, y1, "#444");
  for (let i = 0; i <= ticks; i++) {
    const xv = xa + ((xb - xa) * i) / ticks;
    const yv = ya + ((yb - ya) * i) / ticks;
    scene.line(toX(xv), y0, toX(xv), y0 + 4, "#444");
    scene.text(toX(xv), y0 + 16, fmt(xv), 9, "middle");
    scene.line(x0 - 4, toY(yv), x0, toY(yv), "#444");
    scene.text(x0 - 6, toY(yv) + 3, fmt(yv), 9, "end");
  }
  scene.text((x0 + x1) / 2, scene.height - 6, xLabel, 11, "middle");
  scene.text(12, (y0 + y1) / 2, yLabel, 11, "middle");
  return { toX, toY, x0, x1, y0, y1 };
}

function spread(range: [number, number]): [number, number] {
  let [a, b] = range;
  if (!(b > a)) {
    b = a + 1;
  }
  return [a, b];
}

/** Fixed categorical palette (figures regenerate identically). */
export const PALETTE = [
  "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

/** Monotone blue->red ramp for heatmap cells, v in [0, 1]. */
export function heatColor(v: number): string {
  const t = Math.min(1, Math.max(0, v));
  const r = Math.round(40 + 200 * t);
  const g = Math.round(60 + 40 * (1 - Math.abs(t - 0.5) * 2));
  const b = Math.round(220 - 180 * t);
  return `rgb(${r},${g},${b})`;
}
