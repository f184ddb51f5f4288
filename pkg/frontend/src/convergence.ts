/**
 * Log-log convergence chart: E against N per (path, rule) series, with
 * O(N^-1), O(N^-2), O(N^-4) reference slopes.  Riemann series draw as
 * filled points, Gauss rules as open circles.  Every marker carries the
 * raw CSV tokens in data-n / data-e attributes, so the plotted values
 * are the file's values, byte for byte.
 */

import { ConvergenceRow } from "./csv.js";
import { document, extent, fmt, linearScale, log10, tag } from "./svg.js";

export interface ConvergenceOptions {
  /** reference slopes to draw; default [1, 2, 4] */
  referenceSlopes?: number[];
  width?: number;
  height?: number;
  /** clamp floor applied before taking logs (default 1e-15) */
  floor?: number;
}

const PATH_COLORS: Record<string, string> = {
  linear: "#1f77b4",
  angular: "#d62728",
  quadratic_sd: "#8c564b",
  exact_sd_theta: "#000000",
  exact_sd_s: "#555555",
  exact_sd_t: "#999999",
};

const MARGIN = { left: 64, right: 16, top: 20, bottom: 46 };

function seriesKey(row: ConvergenceRow): string {
  return `${row.path}|${row.rule}`;
}

export function renderConvergence(
  rows: ConvergenceRow[],
  options: ConvergenceOptions = {},
): string {
  if (rows.length === 0) {
    throw new Error("no data rows to plot");
  }
  const width = options.width ?? 720;
  const height = options.height ?? 520;
  const floor = options.floor ?? 1e-15;
  const slopes = options.referenceSlopes ?? [1, 2, 4];

  const ns = rows.map((r) => log10(r.n));
  const es = rows.map((r) => log10(Math.max(r.e, floor)));
  const xDomain = extent(ns);
  const yDomain = extent(es);
  yDomain.min = Math.floor(yDomain.min) - 0.2;
  yDomain.max = Math.ceil(yDomain.max) + 0.2;
  const x = linearScale(xDomain, { min: MARGIN.left, max: width - MARGIN.right });
  const y = linearScale(yDomain, { min: height - MARGIN.bottom, max: MARGIN.top });

  const body: string[] = [];
  body.push(tag("rect", { x: 0, y: 0, width, height, fill: "white" }));

  // axes and decade ticks
  const axisColor = "#333333";
  body.push(tag("line", {
    x1: MARGIN.left, y1: height - MARGIN.bottom,
    x2: width - MARGIN.right, y2: height - MARGIN.bottom,
    stroke: axisColor, "stroke-width": 1,
  }));
  body.push(tag("line", {
    x1: MARGIN.left, y1: MARGIN.top,
    x2: MARGIN.left, y2: height - MARGIN.bottom,
    stroke: axisColor, "stroke-width": 1,
  }));
  const nValues = [...new Set(rows.map((r) => r.n))].sort((a, b) => a - b);
  for (const n of nValues) {
    const px = x(log10(n));
    body.push(tag("line", {
      x1: px, y1: height - MARGIN.bottom, x2: px, y2: height - MARGIN.bottom + 5,
      stroke: axisColor, "stroke-width": 1,
    }));
    body.push(tag("text", {
      x: px, y: height - MARGIN.bottom + 18, "text-anchor": "middle",
      "font-size": 11, fill: axisColor,
    }, String(n)));
  }
  for (let d = Math.ceil(yDomain.min); d <= Math.floor(yDomain.max); d++) {
    const py = y(d);
    body.push(tag("line", {
      x1: MARGIN.left - 5, y1: py, x2: width - MARGIN.right, y2: py,
      stroke: d === 0 ? axisColor : "#dddddd", "stroke-width": 0.6,
    }));
    body.push(tag("text", {
      x: MARGIN.left - 8, y: py + 4, "text-anchor": "end",
      "font-size": 11, fill: axisColor,
    }, `1e${d}`));
  }
  body.push(tag("text", {
    x: (MARGIN.left + width - MARGIN.right) / 2, y: height - 8,
    "text-anchor": "middle", "font-size": 12, fill: axisColor,
  }, "N (integration points)"));
  body.push(tag("text", {
    x: 14, y: (MARGIN.top + height - MARGIN.bottom) / 2,
    "text-anchor": "middle", "font-size": 12, fill: axisColor,
    transform: `rotate(-90 14 ${fmt((MARGIN.top + height - MARGIN.bottom) / 2)})`,
  }, "relative error E"));

  // reference slopes anchored at the top-left data corner
  const eTop = Math.max(...rows.map((r) => Math.max(r.e, floor)));
  const nMin = nValues[0];
  const nMax = nValues[nValues.length - 1];
  for (const slope of slopes) {
    const y1 = log10(eTop);
    const y2 = y1 - slope * (log10(nMax) - log10(nMin));
    body.push(tag("line", {
      x1: x(log10(nMin)), y1: y(y1), x2: x(log10(nMax)), y2: y(y2),
      stroke: "#aaaaaa", "stroke-width": 1, "stroke-dasharray": "5,3",
      class: `ref-slope-${slope}`,
    }));
    body.push(tag("text", {
      x: x(log10(nMax)) - 4, y: y(Math.max(y2, yDomain.min + 0.1)) - 4,
      "text-anchor": "end", "font-size": 10, fill: "#888888",
    }, `O(N^-${slope})`));
  }

  // series: polyline plus markers carrying the raw values
  const byKey = new Map<string, ConvergenceRow[]>();
  for (const row of rows) {
    const key = seriesKey(row);
    if (!byKey.has(key)) byKey.set(key, []);
    byKey.get(key)!.push(row);
  }
  let legendY = MARGIN.top + 4;
  for (const [key, series] of [...byKey.entries()].sort()) {
    series.sort((a, b) => a.n - b.n);
    const [path, rule] = key.split("|");
    const color = PATH_COLORS[path] ?? "#2ca02c";
    const filled = rule.startsWith("riemann");
    const pts = series
      .map((r) => `${fmt(x(log10(r.n)))},${fmt(y(log10(Math.max(r.e, floor))))}`)
      .join(" ");
    body.push(tag("polyline", {
      points: pts, fill: "none", stroke: color, "stroke-width": 1,
      "stroke-opacity": 0.6, class: `series-line ${path} ${rule}`,
    }));
    for (const r of series) {
      body.push(tag("circle", {
        cx: x(log10(r.n)), cy: y(log10(Math.max(r.e, floor))), r: 3.4,
        stroke: color, "stroke-width": 1.2,
        fill: filled ? color : "white",
        class: "marker",
        "data-path": r.path, "data-rule": r.rule,
        "data-n": r.raw.n, "data-e": r.raw.e,
      }));
    }
    body.push(tag("circle", {
      cx: width - 190, cy: legendY, r: 3.4, stroke: color,
      "stroke-width": 1.2, fill: filled ? color : "white",
    }));
    body.push(tag("text", {
      x: width - 180, y: legendY + 4, "font-size": 10, fill: axisColor,
    }, `${path} + ${rule}`));
    legendY += 16;
  }

  return document(width, height, body);
}
