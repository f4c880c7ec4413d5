/** The four figure kinds rendered from the logwave CLI artifacts.
 *
 * Rendering is read-only and deterministic: the same inputs produce the
 * identical SVG bytes.  The block heatmap exposes its cell matrix so tests
 * and downstream tools can inspect exactly what was drawn.
 */

import { Table, blockColumns, column, readCsv, readSummary, readSuiteReport, Summary, summaryNumber } from "./csv.js";
import { PALETTE, Scene, drawAxes, fmt, heatColor } from "./svg.js";

export type FigureKind = "energy-decay" | "block-heatmap" | "loss-fit" | "suite-summary";

export interface FigureSpec {
  kind: FigureKind;
  input: string;
  summary?: string;
  output: string;
  dumpMatrix?: string;
}

const MARGINS = { left: 56, right: 16, top: 18, bottom: 40 };

export function energyDecay(table: Table): string {
  const t = column(table, "t");
  const energy = column(table, "E");
  const blocks = blockColumns(table);
  const scene = new Scene(640, 400);
  const floor = 1e-18;
  const logE = energy.map((v) => Math.log10(Math.max(v, floor)));
  const blockSeries = blocks.map((name) => column(table, name).map((v) => Math.log10(Math.max(v, floor))));
  const allY = logE.concat(...blockSeries);
  const axes = drawAxes(
    scene,
    MARGINS,
    [Math.min(...t), Math.max(...t)],
    [Math.min(...allY), Math.max(...allY)],
    "t",
    "log10 energy",
  );
  blockSeries.forEach((series, i) => {
    scene.polyline(
      series.map((v, j) => [axes.toX(t[j]), axes.toY(v)] as [number, number]),
      PALETTE[i % PALETTE.length],
      0.8,
    );
  });
  scene.polyline(
    logE.map((v, j) => [axes.toX(t[j]), axes.toY(v)] as [number, number]),
    "#000000",
    2.0,
  );
  scene.text(axes.x0 + 8, MARGINS.top + 10, `E(t) (black) with ${blocks.length} block energies`, 11);
  return scene.render();
}

export interface HeatmapResult {
  svg: string;
  matrix: number[][]; // rows: blocks (nu ascending); columns: time samples
  blockNames: string[];
}

export function blockHeatmap(table: Table): HeatmapResult {
  const t = column(table, "t");
  const blocks = blockColumns(table);
  if (blocks.length === 0) {
    throw new Error(`no e_<nu> columns in ${table.path}`);
  }
  const matrix = blocks.map((name) => column(table, name));
  const floor = 1e-18;
  const logs = matrix.map((row) => row.map((v) => Math.log10(Math.max(v, floor))));
  const finite = logs.flat().filter((v) => v > Math.log10(floor));
  const lo = finite.length ? Math.min(...finite) : 0;
  const hi = finite.length ? Math.max(...finite) : 1;
  const scene = new Scene(640, 60 + 24 * blocks.length);
  const x0 = MARGINS.left;
  const cellW = (scene.width - MARGINS.left - MARGINS.right) / t.length;
  blocks.forEach((name, i) => {
    const y = 20 + 24 * i;
    scene.text(x0 - 6, y + 15, name, 10, "end");
    logs[i].forEach((v, j) => {
      const frac = v <= Math.log10(floor) ? 0 : (v - lo) / Math.max(hi - lo, 1e-12);
      scene.rect(x0 + j * cellW, y, cellW, 22, heatColor(frac));
    });
  });
  scene.text(x0, 14, `log10 block energies over t in [${fmt(t[0])}, ${fmt(t[t.length - 1])}]`, 11);
  scene.text((x0 + scene.width - MARGINS.right) / 2, scene.height - 8, "t", 11, "middle");
  return { svg: scene.render(), matrix, blockNames: blocks };
}

export function lossFit(table: Table, summary: Summary): string {
  const t = column(table, "t");
  const sigma = column(table, "sigma_measured");
  const theta = summaryNumber(summary, "theta");
  const betaStar = summaryNumber(summary, "fitted_beta_star");
  const floor = summaryNumber(summary, "loss_grid_floor");
  const gamma = summaryNumber(summary, "gamma");
  const mu = summaryNumber(summary, "mu");
  const scene = new Scene(640, 400);
  const yVals = sigma.slice();
  if (theta !== null) {
    yVals.push(1 - theta, betaStar !== null ? 1 - theta - betaStar * t[t.length - 1] : 1 - theta);
  }
  const axes = drawAxes(
    scene,
    MARGINS,
    [Math.min(...t), Math.max(...t)],
    [Math.min(...yVals) - 0.1, Math.max(...yVals) + 0.1],
    "t",
    "Sobolev index",
  );
  sigma.forEach((v, j) => scene.circle(axes.toX(t[j]), axes.toY(v), 2.2, PALETTE[0]));
  if (theta !== null && betaStar !== null) {
    const line: Array<[number, number]> = t.map((tv) => [
      axes.toX(tv),
      axes.toY(1 - theta - betaStar * tv),
    ]);
    scene.polyline(line, PALETTE[1], 1.8, "6,3");
  }
  const annotations: string[] = [];
  if (theta !== null) annotations.push(`theta = ${fmt(theta)}`);
  if (gamma !== null) annotations.push(`gamma = ${fmt(gamma)}`);
  if (mu !== null) annotations.push(`mu = ${fmt(mu)}`);
  if (betaStar === null) {
    annotations.push("no admissible beta*");
  } else if (floor !== null && betaStar <= floor) {
    annotations.push("no measured loss");
  } else {
    annotations.push(`fitted beta* = ${fmt(betaStar)}`);
  }
  scene.text(axes.x0 + 8, MARGINS.top + 10, annotations.join(", "), 11);
  return scene.render();
}

export function suiteSummary(path: string): string {
  const suites = readSuiteReport(path);
  const rowH = 26;
  const scene = new Scene(720, 46 + rowH * suites.length);
  scene.text(16, 20, "verification suites: measured constants and slopes", 12);
  const barX = 240;
  const barMax = scene.width - barX - 20;
  suites.forEach((s, i) => {
    const y = 38 + rowH * i;
    const color = s.status === "pass" ? "#2ca02c" : "#d62728";
    scene.rect(16, y, 10, 10, color);
    scene.text(32, y + 9, `${s.suite} [${s.status}]`, 11);
    const numeric = Object.entries(s.measured)
      .map(([k, v]) => [k, Number(v.value)] as [string, number])
      .filter(([, v]) => Number.isFinite(v));
    const maxAbs = Math.max(...numeric.map(([, v]) => Math.abs(v)), 1e-12);
    const w = barMax / Math.max(numeric.length, 1);
    numeric.forEach(([name, v], j) => {
      const h = 10 * (Math.abs(v) / maxAbs);
      scene.rect(barX + j * w, y + 10 - h, Math.max(w - 2, 1), h, PALETTE[j % PALETTE.length]);
      if (numeric.length <= 8) {
        scene.text(barX + j * w, y + 21, name.slice(0, Math.floor(w / 6)), 7);
      }
    });
  });
  return scene.render();
}

import { readFileSync, writeFileSync } from "node:fs";

export function render(spec: FigureSpec): void {
  let svg: string;
  switch (spec.kind) {
    case "energy-decay":
      svg = energyDecay(readCsv(spec.input));
      break;
    case "block-heatmap": {
      const result = blockHeatmap(readCsv(spec.input));
      if (spec.dumpMatrix) {
        writeFileSync(
          spec.dumpMatrix,
          JSON.stringify({ blocks: result.blockNames, matrix: result.matrix }, null, 1) + "\n",
        );
      }
      svg = result.svg;
      break;
    }
    case "loss-fit": {
      if (!spec.summary) {
        throw new Error("loss-fit needs --summary <json>");
      }
      svg = lossFit(readCsv(spec.input), readSummary(spec.summary));
      break;
    }
    case "suite-summary":
      svg = suiteSummary(spec.input);
      break;
    default:
      throw new Error(`unknown figure kind ${(spec as FigureSpec).kind}`);
  }
  writeFileSync(spec.output, svg);
}
