/**
 * Parser for the versioned sweep CSV emitted by the degsym harness.
 *
 * The column list is a fixed contract (schema version 1); statistics are
 * never recomputed here — the CSV is the single source of truth.
 */

export const CSV_COLUMNS = [
  "family",
  "params",
  "n",
  "trials",
  "unknowns",
  "p_sym",
  "p_sym_lo",
  "p_sym_hi",
  "p_conn",
  "p_conn_lo",
  "p_conn_hi",
  "meanY",
  "varY",
  "EY_pred",
  "meanZ",
  "varZ",
  "EZ_pred",
  "pz_lower",
  "r_bounded_1",
  "r_bounded_2",
  "r_super_1",
  "r_super_2",
  "seconds",
] as const;

const STRING_COLUMNS = new Set(["family", "params"]);

export class MissingColumn extends Error {
  constructor(column: string) {
    super(`missing column: ${column}`);
    this.name = "MissingColumn";
  }
}

export class EmptyInput extends Error {
  constructor() {
    super("no data rows in CSV input");
    this.name = "EmptyInput";
  }
}

export interface SweepRow {
  family: string;
  params: string;
  [key: string]: string | number;
}

/** Parse harness CSV text into rows; header must carry every schema column. */
export function parseSweepCsv(text: string): SweepRow[] {
  const lines = text.split("\n").filter((l) => l.trim() !== "");
  if (lines.length === 0) {
    throw new EmptyInput();
  }
  const header = lines[0].split(",");
  const index = new Map<string, number>();
  header.forEach((name, i) => index.set(name.trim(), i));
  for (const col of CSV_COLUMNS) {
    if (!index.has(col)) {
      throw new MissingColumn(col);
    }
  }
  const rows: SweepRow[] = [];
  for (const line of lines.slice(1)) {
    const cells = line.split(",");
    const row: Record<string, string | number> = {};
    for (const col of CSV_COLUMNS) {
      const raw = cells[index.get(col)!] ?? "";
      if (STRING_COLUMNS.has(col)) {
        row[col] = raw;
      } else {
        const value = Number(raw);
        if (Number.isNaN(value)) {
          throw new Error(`non-numeric value ${JSON.stringify(raw)} in column ${col}`);
        }
        row[col] = value;
      }
    }
    rows.push(row as SweepRow);
  }
  return rows;
}

/** Parse a "k1=v1;k2=v2" params string into a key→value map. */
export function parseParams(params: string): Map<string, string> {
  const out = new Map<string, string>();
  for (const part of params.split(";")) {
    const eq = part.indexOf("=");
    if (eq > 0) {
      out.set(part.slice(0, eq), part.slice(eq + 1));
    }
  }
  return out;
}

/**
 * Value of `column` for a row: a schema column directly, otherwise a key
 * inside the params string (so "c1" works as a series column).
 */
export function columnValue(row: SweepRow, column: string): string {
  if (column in row) {
    return String(row[column]);
  }
  const fromParams = parseParams(row.params).get(column);
  if (fromParams === undefined) {
    throw new MissingColumn(column);
  }
  return fromParams;
}
