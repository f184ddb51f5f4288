/**
 * Heat map of the angular-plane integrand magnitude (log10 |H_hat e^f|)
 * with an optional steepest-descent node overlay.
 */

import { NodeRow, ThetaMapRow } from "./csv.js";
import { colorRamp, document, extent, linearScale, tag } from "./svg.js";

export interface ThetaMapOptions {
  width?: number;
  height?: number;
  /** color scale bounds; defaults to the data extent */
  colorMin?: number;
  colorMax?: number;
  nodes?: NodeRow[];
}

const MARGIN = { left: 56, right: 16, top: 16, bottom: 42 };

export function renderThetaMap(
  rows: ThetaMapRow[],
  options: ThetaMapOptions = {},
): string {
  if (rows.length === 0) {
    throw new Error("no grid rows to plot");
  }
  const width = options.width ?? 700;
  const height = options.height ?? 560;

  const xs = [...new Set(rows.map((r) => r.thetaRe))].sort((a, b) => a - b);
  const ys = [...new Set(rows.map((r) => r.thetaIm))].sort((a, b) => a - b);
  const xDomain = extent(rows.map((r) => r.thetaRe));
  const yDomain = extent(rows.map((r) => r.thetaIm));
  const x = linearScale(xDomain, { min: MARGIN.left, max: width - MARGIN.right });
  const y = linearScale(yDomain, { min: height - MARGIN.bottom, max: MARGIN.top });

  const values = rows.map((r) => r.logAbs);
  const vExtent = extent(values);
  const vMin = options.colorMin ?? vExtent.min;
  const vMax = options.colorMax ?? vExtent.max;
  const vSpan = vMax - vMin || 1;

  const cellW = (width - MARGIN.left - MARGIN.right) / Math.max(xs.length - 1, 1);
  const cellH = (height - MARGIN.top - MARGIN.bottom) / Math.max(ys.length - 1, 1);

  const body: string[] = [];
  body.push(tag("rect", { x: 0, y: 0, width, height, fill: "white" }));
  for (const r of rows) {
    const t = (r.logAbs - vMin) / vSpan;
    body.push(tag("rect", {
      x: x(r.thetaRe) - cellW / 2,
      y: y(r.thetaIm) - cellH / 2,
      width: cellW + 0.5,
      height: cellH + 0.5,
      fill: colorRamp(t),
    }));
  }
  if (options.nodes) {
    for (const node of options.nodes) {
      if (node.thetaRe < xDomain.min || node.thetaRe > xDomain.max) continue;
      if (node.thetaIm < yDomain.min || node.thetaIm > yDomain.max) continue;
      body.push(tag("circle", {
        cx: x(node.thetaRe), cy: y(node.thetaIm), r: 2.2,
        fill: "white", stroke: "black", "stroke-width": 0.8,
        class: "sd-node",
      }));
    }
  }
  const axisColor = "#333333";
  body.push(tag("text", {
    x: (MARGIN.left + width - MARGIN.right) / 2, y: height - 10,
    "text-anchor": "middle", "font-size": 12, fill: axisColor,
  }, "Re theta (rad)"));
  body.push(tag("text", {
    x: 14, y: (MARGIN.top + height - MARGIN.bottom) / 2,
    "text-anchor": "middle", "font-size": 12, fill: axisColor,
    transform: `rotate(-90 14 ${(MARGIN.top + height - MARGIN.bottom) / 2})`,
  }, "Im theta (rad)"));
  // color bar
  const barX = width - MARGIN.right - 160;
  for (let i = 0; i <= 120; i++) {
    body.push(tag("rect", {
      x: barX + i, y: 4, width: 1.5, height: 8,
      fill: colorRamp(i / 120),
    }));
  }
  body.push(tag("text", {
    x: barX - 4, y: 12, "text-anchor": "end", "font-size": 9, fill: axisColor,
  }, `log10|f| in [${vMin.toPrecision(3)}, ${vMax.toPrecision(3)}]`));
  return document(width, height, body);
}
