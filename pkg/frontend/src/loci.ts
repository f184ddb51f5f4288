/**
 * Conformal-map figure: loci of the physical spectral root in the
 * complex krho plane, one family of curves at constant loss (sweeping
 * kz) and one at constant kz (sweeping loss).
 */

import { LociRow } from "./csv.js";
import { document, extent, fmt, linearScale, tag } from "./svg.js";

export interface LociOptions {
  width?: number;
  height?: number;
  /** draw every n-th constant-kz curve (the grid can be dense) */
  kzStride?: number;
  lossStride?: number;
}

const MARGIN = { left: 56, right: 16, top: 16, bottom: 42 };

function groupBy<T>(rows: T[], key: (row: T) => number): Map<number, T[]> {
  const out = new Map<number, T[]>();
  for (const row of rows) {
    const k = key(row);
    if (!out.has(k)) out.set(k, []);
    out.get(k)!.push(row);
  }
  return out;
}

export function renderLoci(rows: LociRow[], options: LociOptions = {}): string {
  if (rows.length === 0) {
    throw new Error("no loci rows to plot");
  }
  const width = options.width ?? 640;
  const height = options.height ?? 640;
  const kzStride = options.kzStride ?? 4;
  const lossStride = options.lossStride ?? 4;

  const xDomain = extent(rows.map((r) => r.krhoRe));
  const yDomain = extent(rows.map((r) => r.krhoIm));
  const pad = 0.05 * Math.max(xDomain.max - xDomain.min, yDomain.max - yDomain.min);
  const x = linearScale({ min: xDomain.min - pad, max: xDomain.max + pad },
                        { min: MARGIN.left, max: width - MARGIN.right });
  const y = linearScale({ min: yDomain.min - pad, max: yDomain.max + pad },
                        { min: height - MARGIN.bottom, max: MARGIN.top });

  const body: string[] = [];
  body.push(tag("rect", { x: 0, y: 0, width, height, fill: "white" }));

  const polyline = (pts: LociRow[], stroke: string, cls: string) =>
    tag("polyline", {
      points: pts.map((r) => `${fmt(x(r.krhoRe))},${fmt(y(r.krhoIm))}`).join(" "),
      fill: "none", stroke, "stroke-width": 0.8, class: cls,
    });

  // constant-loss curves (image of the real kz line)
  const byLoss = [...groupBy(rows, (r) => r.k0Im).entries()].sort((a, b) => a[0] - b[0]);
  byLoss.forEach(([k0im, pts], idx) => {
    if (idx % lossStride !== 0) return;
    pts.sort((a, b) => a.kz - b.kz);
    body.push(polyline(pts, "#1f77b4", `const-loss loss-${k0im}`));
  });
  // constant-kz curves (loss sweep)
  const byKz = [...groupBy(rows, (r) => r.kz).entries()].sort((a, b) => a[0] - b[0]);
  byKz.forEach(([kz, pts], idx) => {
    if (idx % kzStride !== 0) return;
    pts.sort((a, b) => a.k0Im - b.k0Im);
    body.push(polyline(pts, "#d62728", `const-kz kz-${kz}`));
  });

  const axisColor = "#333333";
  body.push(tag("line", {
    x1: x(0), y1: MARGIN.top, x2: x(0), y2: height - MARGIN.bottom,
    stroke: axisColor, "stroke-width": 0.8,
  }));
  body.push(tag("line", {
    x1: MARGIN.left, y1: y(0), x2: width - MARGIN.right, y2: y(0),
    stroke: axisColor, "stroke-width": 0.8,
  }));
  body.push(tag("text", {
    x: (MARGIN.left + width - MARGIN.right) / 2, y: height - 10,
    "text-anchor": "middle", "font-size": 12, fill: axisColor,
  }, "Re krho"));
  body.push(tag("text", {
    x: 14, y: (MARGIN.top + height - MARGIN.bottom) / 2,
    "text-anchor": "middle", "font-size": 12, fill: axisColor,
    transform: `rotate(-90 14 ${(MARGIN.top + height - MARGIN.bottom) / 2})`,
  }, "Im krho"));
  return document(width, height, body);
}
