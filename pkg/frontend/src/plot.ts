import { mkdirSync, writeFileSync } from "node:fs";
import { basename, join } from "node:path";

import { movingAverage, readSteplogCsv, readSweepCsv } from "./csv.js";

/** Fixed styling: predictable output keeps image diffs meaningful. */
const WIDTH = 720;
const HEIGHT = 440;
const MARGIN = { left: 62, right: 18, top: 34, bottom: 48 };
const PALETTE = ["#2166ac", "#b2182b", "#1b7837", "#e08214", "#762a83", "#35978f"];

interface Series {
  label: string;
  color: string;
  /** faint context line, e.g. the raw per-step values */
  raw?: [number, number][];
  /** the emphasized line */
  main: [number, number][];
}

interface PanelSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  /** dashed horizontal reference, e.g. the engagement upper bound */
  dashedY?: number;
}

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo === Infinity) throw new RangeError("no data to plot");
  if (lo === hi) {
    // flat series still deserves a visible band
    lo -= 1;
    hi += 1;
  }
  return [lo, hi];
}

function ticks(lo: number, hi: number, count = 5): number[] {
  const out: number[] = [];
  for (let i = 0; i < count; i++) {
    out.push(lo + ((hi - lo) * i) / (count - 1));
  }
  return out;
}

function fmt(value: number): string {
  const abs = Math.abs(value);
  if (abs >= 1000) return value.toFixed(0);
  if (abs >= 10) return value.toFixed(1);
  return value.toFixed(2);
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/** Render one panel to a standalone SVG document. */
function renderPanel(spec: PanelSpec): string {
  const xs = spec.series.flatMap((s) =>
    [...s.main, ...(s.raw ?? [])].map((p) => p[0]),
  );
  const ys = spec.series.flatMap((s) =>
    [...s.main, ...(s.raw ?? [])].map((p) => p[1]),
  );
  if (spec.dashedY !== undefined) ys.push(spec.dashedY);
  const [xLo, xHi] = extent(xs);
  const [yLo, yHi] = extent(ys);

  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const px = (x: number) => MARGIN.left + ((x - xLo) / (xHi - xLo)) * plotW;
  const py = (y: number) => MARGIN.top + plotH - ((y - yLo) / (yHi - yLo)) * plotH;
  const pts = (points: [number, number][]) =>
    points.map(([x, y]) => `${px(x).toFixed(2)},${py(y).toFixed(2)}`).join(" ");

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif" font-size="12">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
    `<text x="${WIDTH / 2}" y="20" text-anchor="middle" font-size="15">${esc(spec.title)}</text>`,
  );

  // axes, ticks, gridlines
  for (const t of ticks(xLo, xHi)) {
    const x = px(t).toFixed(2);
    parts.push(
      `<line x1="${x}" y1="${MARGIN.top}" x2="${x}" y2="${MARGIN.top + plotH}" stroke="#dddddd"/>`,
      `<text x="${x}" y="${MARGIN.top + plotH + 18}" text-anchor="middle">${fmt(t)}</text>`,
    );
  }
  for (const t of ticks(yLo, yHi)) {
    const y = py(t).toFixed(2);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y}" x2="${MARGIN.left + plotW}" y2="${y}" stroke="#dddddd"/>`,
      `<text x="${MARGIN.left - 8}" y="${y}" text-anchor="end" dominant-baseline="middle">${fmt(t)}</text>`,
    );
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="#333333"/>`,
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 10}" text-anchor="middle">${esc(spec.xLabel)}</text>`,
    `<text x="16" y="${MARGIN.top + plotH / 2}" text-anchor="middle" ` +
      `transform="rotate(-90 16 ${MARGIN.top + plotH / 2})">${esc(spec.yLabel)}</text>`,
  );

  if (spec.dashedY !== undefined) {
    const y = py(spec.dashedY).toFixed(2);
    parts.push(
      `<line class="bound" x1="${MARGIN.left}" y1="${y}" x2="${MARGIN.left + plotW}" ` +
        `y2="${y}" stroke="#555555" stroke-dasharray="6 4"/>`,
    );
  }

  for (const s of spec.series) {
    if (s.raw && s.raw.length > 1) {
      parts.push(
        `<polyline class="series-raw" fill="none" stroke="${s.color}" stroke-opacity="0.25" ` +
          `points="${pts(s.raw)}"/>`,
      );
    }
    parts.push(
      `<polyline class="series-avg" fill="none" stroke="${s.color}" stroke-width="2" ` +
        `points="${pts(s.main)}"/>`,
    );
  }

  // legend in the top-right corner of the plot area
  spec.series.forEach((s, i) => {
    const y = MARGIN.top + 16 + 16 * i;
    const x = MARGIN.left + plotW - 150;
    parts.push(
      `<line x1="${x}" y1="${y - 4}" x2="${x + 22}" y2="${y - 4}" stroke="${s.color}" stroke-width="2"/>`,
      `<text x="${x + 28}" y="${y}">${esc(s.label)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

export interface ConvergenceOptions {
  outDir: string;
  /** moving-average window, matching the training loop's summary (15) */
  window?: number;
  /** engagement ceiling to draw as a dashed line */
  upperBound?: number;
  /** one label per CSV; defaults to file names */
  labels?: string[];
}

/**
 * Render engagement and sentiment convergence panels from steplog CSVs.
 *
 * Each CSV becomes one color; the raw series is drawn faint under its
 * moving average. Returns the two written file paths.
 */
export function plotConvergence(
  steplogPaths: readonly string[],
  options: ConvergenceOptions,
): string[] {
  if (steplogPaths.length === 0) {
    throw new RangeError("need at least one steplog CSV");
  }
  const window = options.window ?? 15;
  const logs = steplogPaths.map((p) => readSteplogCsv(p));
  const labels = options.labels ?? steplogPaths.map((p) => basename(p, ".csv"));

  const build = (field: "engagement" | "sentiment"): Series[] =>
    logs.map((rows, i) => {
      const steps = rows.map((r) => r.step);
      const values = rows.map((r) => r[field]);
      const smoothed = movingAverage(values, window);
      return {
        label: labels[i] ?? `run ${i}`,
        color: PALETTE[i % PALETTE.length]!,
        raw: steps.map((s, j) => [s, values[j]!] as [number, number]),
        main: steps.map((s, j) => [s, smoothed[j]!] as [number, number]),
      };
    });

  mkdirSync(options.outDir, { recursive: true });
  const outputs: [string, PanelSpec][] = [
    [
      join(options.outDir, "convergence_engagement.svg"),
      {
        title: `Engagement per step (moving average, window ${window})`,
        xLabel: "training step",
        yLabel: "engaged users",
        series: build("engagement"),
        dashedY: options.upperBound,
      },
    ],
    [
      join(options.outDir, "convergence_sentiment.svg"),
      {
        title: `Mean sampled sentiment per step (window ${window})`,
        xLabel: "training step",
        yLabel: "sentiment",
        series: build("sentiment"),
      },
    ],
  ];
  return outputs.map(([path, spec]) => {
    writeFileSync(path, renderPanel(spec));
    return path;
  });
}

export interface SweepOptions {
  outDir: string;
  labels?: string[];
}

/**
 * Render engagement-vs-sentiment curves from sweep CSVs into sweep.svg.
 * Returns the written file path.
 */
export function plotSweep(
  sweepPaths: readonly string[],
  options: SweepOptions,
): string {
  if (sweepPaths.length === 0) {
    throw new RangeError("need at least one sweep CSV");
  }
  const labels = options.labels ?? sweepPaths.map((p) => basename(p, ".csv"));
  const series: Series[] = sweepPaths.map((path, i) => {
    const rows = readSweepCsv(path);
    return {
      label: labels[i] ?? `sweep ${i}`,
      color: PALETTE[i % PALETTE.length]!,
      main: rows.map((r) => [r.sentiment, r.count] as [number, number]),
    };
  });
  mkdirSync(options.outDir, { recursive: true });
  const path = join(options.outDir, "sweep.svg");
  writeFileSync(
    path,
    renderPanel({
      title: "Engagement across the sentiment grid",
      xLabel: "content sentiment",
      yLabel: "engaged users",
      series,
    }),
  );
  return path;
}
