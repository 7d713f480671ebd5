import { existsSync, readFileSync } from "fs";
import { basename } from "path";
import Papa from "papaparse";

/** Input CSV rejected: missing file, wrong header, empty or bad data. */
export class SchemaError extends Error {}

export interface Table {
  path: string;
  header: string[];
  columns: Map<string, number[]>;
  rows: number;
}

/**
 * Read a numeric CSV and check it against the expected header.
 *
 * The header must match exactly, names and order both; every data cell
 * must parse as a finite number; at least one data row is required.
 */
export function readTable(path: string, expectedHeader: string[]): Table {
  if (!existsSync(path)) {
    throw new SchemaError(`missing input file: ${path}`);
  }
  const text = readFileSync(path, "utf8");
  const parsed = Papa.parse<string[]>(text, {
    delimiter: ",",
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const e = parsed.errors[0];
    throw new SchemaError(`${path}: unparseable CSV (${e.message})`);
  }
  const grid = parsed.data;
  if (grid.length === 0) {
    throw new SchemaError(`${path}: empty file`);
  }
  const header = grid[0].map((h) => h.trim());
  if (header.join(",") !== expectedHeader.join(",")) {
    throw new SchemaError(
      `${path}: header mismatch: expected "${expectedHeader.join(",")}", ` +
      `got "${header.join(",")}"`
    );
  }
  if (grid.length === 1) {
    throw new SchemaError(`${path}: empty series (header but no data rows)`);
  }
  const columns = new Map<string, number[]>(header.map((h) => [h, []]));
  for (let r = 1; r < grid.length; r++) {
    const row = grid[r];
    if (row.length !== header.length) {
      throw new SchemaError(
        `${path}: row ${r + 1} has ${row.length} cells, expected ${header.length}`
      );
    }
    for (let c = 0; c < row.length; c++) {
      const v = Number(row[c]);
      if (row[c].trim() === "" || !Number.isFinite(v)) {
        throw new SchemaError(
          `${path}: row ${r + 1}, column "${header[c]}": ` +
          `not a finite number: "${row[c]}"`
        );
      }
      columns.get(header[c])!.push(v);
    }
  }
  return { path, header, columns, rows: grid.length - 1 };
}

/** Column accessor; the header check makes absence a programming error. */
export function column(table: Table, name: string): number[] {
  const col = table.columns.get(name);
  if (!col) throw new Error(`no column "${name}" in ${table.path}`);
  return col;
}

/** Series label for a CSV path: basename without the extension. */
export function stem(path: string): string {
  return basename(path).replace(/\.csv$/i, "");
}
