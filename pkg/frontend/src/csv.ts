/**
 * Strict readers for the benchmark CSV schemas.
 *
 * Values that end up plotted are kept as their raw string tokens next to
 * the parsed numbers, so a chart can carry exactly what the CSV said.
 */

import Papa from "papaparse";

export class SchemaError extends Error {
  constructor(public readonly column: string, detail: string) {
    super(`schema mismatch in column '${column}': ${detail}`);
    this.name = "SchemaError";
  }
}

export interface ConvergenceRow {
  caseId: string;
  path: string;
  rule: string;
  n: number;
  iRe: number;
  iIm: number;
  e: number;
  /** raw CSV tokens, byte-for-byte */
  raw: { n: string; e: string };
}

export interface ThetaMapRow {
  thetaRe: number;
  thetaIm: number;
  logAbs: number;
  reF: number;
}

export interface LociRow {
  k0Im: number;
  kz: number;
  krhoRe: number;
  krhoIm: number;
}

export interface NodeRow {
  thetaRe: number;
  thetaIm: number;
}

function parseTable(text: string, header: string[]): string[][] {
  const parsed = Papa.parse<string[]>(text.trim(), { skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    throw new SchemaError("*", parsed.errors[0].message);
  }
  const rows = parsed.data;
  if (rows.length === 0) {
    throw new SchemaError("*", "empty file");
  }
  const got = rows[0];
  header.forEach((name, i) => {
    if (got[i] !== name) {
      throw new SchemaError(name, `expected at position ${i}, found '${got[i] ?? ""}'`);
    }
  });
  if (got.length !== header.length) {
    throw new SchemaError(got[header.length], "unexpected extra column");
  }
  return rows.slice(1);
}

function num(token: string | undefined, column: string, line: number): number {
  if (token === undefined || token === "") {
    throw new SchemaError(column, `missing value on data row ${line}`);
  }
  const value = Number(token);
  if (!Number.isFinite(value)) {
    throw new SchemaError(column, `'${token}' is not a finite number (row ${line})`);
  }
  return value;
}

export function readConvergence(text: string): ConvergenceRow[] {
  const header = ["case_id", "path", "rule", "N", "I_re", "I_im", "E", "wall_ns"];
  return parseTable(text, header).map((f, i) => ({
    caseId: f[0],
    path: f[1],
    rule: f[2],
    n: num(f[3], "N", i + 2),
    iRe: num(f[4], "I_re", i + 2),
    iIm: num(f[5], "I_im", i + 2),
    e: num(f[6], "E", i + 2),
    raw: { n: f[3], e: f[6] },
  }));
}

export function readThetaMap(text: string): ThetaMapRow[] {
  const header = ["theta_re", "theta_im", "logabs_integrand", "re_f"];
  return parseTable(text, header).map((f, i) => ({
    thetaRe: num(f[0], "theta_re", i + 2),
    thetaIm: num(f[1], "theta_im", i + 2),
    logAbs: num(f[2], "logabs_integrand", i + 2),
    reF: num(f[3], "re_f", i + 2),
  }));
}

export function readLoci(text: string): LociRow[] {
  const header = ["k0_im", "kz", "krho_re", "krho_im"];
  return parseTable(text, header).map((f, i) => ({
    k0Im: num(f[0], "k0_im", i + 2),
    kz: num(f[1], "kz", i + 2),
    krhoRe: num(f[2], "krho_re", i + 2),
    krhoIm: num(f[3], "krho_im", i + 2),
  }));
}

export function readNodes(text: string): NodeRow[] {
  const header = ["theta_re", "theta_im"];
  return parseTable(text, header).map((f, i) => ({
    thetaRe: num(f[0], "theta_re", i + 2),
    thetaIm: num(f[1], "theta_im", i + 2),
  }));
}
