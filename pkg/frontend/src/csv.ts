/** Strict readers for the logwave CLI artifacts.
 *
 * The CSV contract is purely numeric with a single header row; any missing
 * column or empty body is a named error so broken pipelines fail loudly.
 */

import { readFileSync } from "node:fs";

export class MissingColumnError extends Error {
  constructor(column: string, path: string) {
    super(`column ${column} not found in ${path}`);
    this.name = "MissingColumnError";
  }
}

export class EmptyCsvError extends Error {
  constructor(path: string) {
    super(`no data rows in ${path}`);
    this.name = "EmptyCsvError";
  }
}

export interface Table {
  path: string;
  columns: string[];
  rows: number[][];
}

export function readCsv(path: string): Table {
  const text = readFileSync(path, "utf8").trim();
  const lines = text.length > 0 ? text.split(/\r?\n/) : [];
  if (lines.length < 2) {
    throw new EmptyCsvError(path);
  }
  const columns = lines[0].split(",").map((c) => c.trim());
  const rows = lines.slice(1).map((line, i) => {
    const parts = line.split(",");
    if (parts.length !== columns.length) {
      throw new Error(`row ${i + 1} of ${path} has ${parts.length} fields, expected ${columns.length}`);
    }
    return parts.map(Number);
  });
  return { path, columns, rows };
}

export function column(table: Table, name: string): number[] {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new MissingColumnError(name, table.path);
  }
  return table.rows.map((r) => r[idx]);
}

export function blockColumns(table: Table): string[] {
  return table.columns.filter((c) => /^e_\d+$/.test(c));
}

/** Summary JSON: every entry is { value, provenance }. */
export interface SummaryEntry {
  value: unknown;
  provenance: string;
}

export type Summary = Record<string, SummaryEntry>;

export function readSummary(path: string): Summary {
  return JSON.parse(readFileSync(path, "utf8")) as Summary;
}

export function summaryNumber(summary: Summary, key: string): number | null {
  const entry = summary[key];
  if (!entry || entry.value === null || entry.value === undefined) {
    return null;
  }
  const v = Number(entry.value);
  return Number.isFinite(v) ? v : null;
}

export interface SuiteEntry {
  suite: string;
  status: string;
  measured: Record<string, SummaryEntry>;
}

export function readSuiteReport(path: string): SuiteEntry[] {
  const data = JSON.parse(readFileSync(path, "utf8")) as { suites: SuiteEntry[] };
  if (!data.suites) {
    throw new Error(`${path} carries no suites array`);
  }
  return data.suites;
}
