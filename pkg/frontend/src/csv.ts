/** Parsing for the velfield CSV outputs (field grids and error sweeps). */

import { readFileSync } from "fs";

export interface FieldSample {
  x: number;
  y: number;
  z: number;
  rePressure: number;
  imPressure: number;
  reVx: number;
  imVx: number;
  reVy: number;
  imVy: number;
  reVz: number;
  imVz: number;
}

export interface FieldCsv {
  metadata: Record<string, string>;
  samples: FieldSample[];
}

export interface SweepRow {
  frequencyHz: number;
  condH: number;
  condG: number;
  etaVmOuter: number;
  etaPmOuter: number;
  etaVmInner: number;
  etaPmInner: number;
  excludedCounts: number[];
}

export interface SweepCsv {
  metadata: Record<string, string>;
  rows: SweepRow[];
}

export const FIELD_COLUMNS = [
  "x", "y", "z",
  "Re(p)", "Im(p)",
  "Re(Vx)", "Im(Vx)",
  "Re(Vy)", "Im(Vy)",
  "Re(Vz)", "Im(Vz)",
];

export const SWEEP_COLUMNS = [
  "frequency_hz", "cond_H", "cond_G",
  "eta_vm_r050", "eta_pm_r050", "eta_vm_r015", "eta_pm_r015",
  "excluded_counts",
];

/** Key=value pairs from the leading `# ...` metadata comment, if present. */
function parseMetadata(line: string): Record<string, string> {
  const metadata: Record<string, string> = {};
  for (const token of line.replace(/^#\s*/, "").split(/\s+/)) {
    const eq = token.indexOf("=");
    if (eq > 0) metadata[token.slice(0, eq)] = token.slice(eq + 1);
  }
  return metadata;
}

function splitContent(path: string, expectedColumns: string[]) {
  const lines = readFileSync(path, "utf8").split(/\r?\n/).filter((l) => l.length > 0);
  let metadata: Record<string, string> = {};
  let start = 0;
  if (lines.length > 0 && lines[0].startsWith("#")) {
    metadata = parseMetadata(lines[0]);
    start = 1;
  }
  if (lines.length <= start) {
    throw new Error(`${path}: empty CSV (no header line)`);
  }
  const header = lines[start].split(",");
  for (const column of expectedColumns) {
    if (!header.includes(column)) {
      throw new Error(`${path}: missing column '${column}' (header: ${lines[start]})`);
    }
  }
  const body = lines.slice(start + 1);
  if (body.length === 0) {
    throw new Error(`${path}: no data rows`);
  }
  return { metadata, header, body };
}

function numeric(path: string, cell: string, column: string): number {
  const value = Number(cell);
  if (!Number.isFinite(value)) {
    throw new Error(`${path}: non-numeric value '${cell}' in column '${column}'`);
  }
  return value;
}

export function readFieldCsv(path: string): FieldCsv {
  const { metadata, header, body } = splitContent(path, FIELD_COLUMNS);
  const index = new Map(header.map((name, i) => [name, i]));
  const at = (cells: string[], name: string) =>
    numeric(path, cells[index.get(name)!], name);
  const samples = body.map((line) => {
    const cells = line.split(",");
    if (cells.length < header.length) {
      throw new Error(`${path}: short row '${line}'`);
    }
    return {
      x: at(cells, "x"),
      y: at(cells, "y"),
      z: at(cells, "z"),
      rePressure: at(cells, "Re(p)"),
      imPressure: at(cells, "Im(p)"),
      reVx: at(cells, "Re(Vx)"),
      imVx: at(cells, "Im(Vx)"),
      reVy: at(cells, "Re(Vy)"),
      imVy: at(cells, "Im(Vy)"),
      reVz: at(cells, "Re(Vz)"),
      imVz: at(cells, "Im(Vz)"),
    };
  });
  return { metadata, samples };
}

export function readSweepCsv(path: string): SweepCsv {
  const { metadata, header, body } = splitContent(path, SWEEP_COLUMNS);
  const index = new Map(header.map((name, i) => [name, i]));
  const rows = body.map((line) => {
    const cells = line.split(",");
    const at = (name: string) => numeric(path, cells[index.get(name)!], name);
    return {
      frequencyHz: at("frequency_hz"),
      condH: at("cond_H"),
      condG: at("cond_G"),
      etaVmOuter: at("eta_vm_r050"),
      etaPmOuter: at("eta_pm_r050"),
      etaVmInner: at("eta_vm_r015"),
      etaPmInner: at("eta_pm_r015"),
      excludedCounts: cells[index.get("excluded_counts")!]
        .split(";")
        .map((c) => numeric(path, c, "excluded_counts")),
    };
  });
  rows.sort((a, b) => a.frequencyHz - b.frequencyHz);
  return { metadata, rows };
}
