import { readFileSync } from "node:fs";

/** Parsed CSV with a header row. The prft CSVs never quote fields. */
export interface Table {
  header: string[];
  rows: string[][];
}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new Error("empty CSV");
  }
  const header = lines[0].split(",").map((s) => s.trim());
  const rows = lines.slice(1).map((line, i) => {
    const cells = line.split(",");
    if (cells.length !== header.length) {
      throw new Error(`row ${i + 2}: expected ${header.length} cells, got ${cells.length}`);
    }
    return cells;
  });
  return { header, rows };
}

/**
 * Load a CSV and check it carries the required columns, reporting exactly
 * which ones are missing (the prft column orders are documented and fixed,
 * but extra columns are tolerated).
 */
export function readTable(path: string, required: string[]): Table {
  let text: string;
  try {
    text = readFileSync(path, "utf-8");
  } catch {
    throw new Error(`cannot read ${path}`);
  }
  const table = parseCsv(text);
  const missing = required.filter((name) => !table.header.includes(name));
  if (missing.length > 0) {
    throw new Error(
      `${path}: schema mismatch: missing column(s) [${missing.join(", ")}], ` +
        `found [${table.header.join(", ")}]`,
    );
  }
  return table;
}

/** Numeric column by name; empty cells decode to NaN (prft's encoding). */
export function numericColumn(table: Table, name: string): number[] {
  const index = table.header.indexOf(name);
  if (index < 0) {
    throw new Error(`no column ${name} in [${table.header.join(", ")}]`);
  }
  return table.rows.map((row, i) => {
    const cell = row[index].trim();
    if (cell === "") return NaN;
    const value = Number(cell);
    if (Number.isNaN(value)) {
      throw new Error(`column ${name}, row ${i + 2}: not a number: "${cell}"`);
    }
    return value;
  });
}

export function stringColumn(table: Table, name: string): string[] {
  const index = table.header.indexOf(name);
  if (index < 0) {
    throw new Error(`no column ${name} in [${table.header.join(", ")}]`);
  }
  return table.rows.map((row) => row[index].trim());
}
