/** Minimal deterministic SVG assembly: plain strings, no DOM. */

export interface Extent {
  min: number;
  max: number;
}

export function extent(values: number[]): Extent {
  let min = Infinity;
  let max = -Infinity;
  for (const v of values) {
    if (v < min) min = v;
    if (v > max) max = v;
  }
  return { min, max };
}

/** Linear map from a data interval onto pixel coordinates. */
export function linearScale(domain: Extent, range: Extent) {
  const span = domain.max - domain.min || 1;
  return (v: number) =>
    range.min + ((v - domain.min) / span) * (range.max - range.min);
}

export function log10(v: number): number {
  return Math.log(v) / Math.LN10;
}

const XML_ESCAPES: Record<string, string> = {
  "&": "&amp;",
  "<": "&lt;",
  ">": "&gt;",
  '"': "&quot;",
};

export function escapeXml(text: string): string {
  return text.replace(/[&<>"]/g, (c) => XML_ESCAPES[c]);
}

export function tag(
  name: string,
  attrs: Record<string, string | number>,
  body = "",
): string {
  const parts = Object.entries(attrs)
    .map(([k, v]) => `${k}="${typeof v === "number" ? fmt(v) : escapeXml(v)}"`)
    .join(" ");
  return body === "" && name !== "text"
    ? `<${name} ${parts}/>`
    : `<${name} ${parts}>${body}</${name}>`;
}

/** Fixed-notation pixel values keep the output byte-stable. */
export function fmt(v: number): string {
  const rounded = Math.round(v * 100) / 100;
  return Object.is(rounded, -0) ? "0" : String(rounded);
}

export function document(width: number, height: number, body: string[]): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="sans-serif">`,
    ...body,
    "</svg>",
    "",
  ].join("\n");
}

/** Piecewise-linear color ramp from dark blue through green to yellow. */
export function colorRamp(t: number): string {
  const stops: Array<[number, [number, number, number]]> = [
    [0.0, [68, 1, 84]],
    [0.25, [59, 82, 139]],
    [0.5, [33, 145, 140]],
    [0.75, [94, 201, 98]],
    [1.0, [253, 231, 37]],
  ];
  const x = Math.min(1, Math.max(0, t));
  for (let i = 1; i < stops.length; i++) {
    const [t1, c1] = stops[i - 1];
    const [t2, c2] = stops[i];
    if (x <= t2) {
      const u = (x - t1) / (t2 - t1);
      const rgb = c1.map((a, k) => Math.round(a + u * (c2[k] - a)));
      return `rgb(${rgb[0]},${rgb[1]},${rgb[2]})`;
    }
  }
  return "rgb(253,231,37)";
}
