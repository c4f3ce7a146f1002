import fs from "node:fs";
import Papa from "papaparse";

export const SCHEMA_COLUMNS = [
  "experiment",
  "d",
  "n",
  "gamma",
  "model",
  "trial",
  "seed",
  "metric_name",
  "metric_value",
] as const;

/**
 * One CSV row, every field kept as text. Seeds are 64-bit and would
 * lose precision as doubles; numeric fields are converted where used.
 */
export type Row = Record<string, string>;

export function parseExperimentCsv(text: string, source = "<csv>"): Row[] {
  const parsed = Papa.parse<Row>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new Error(`${source}: malformed CSV (${first.message})`);
  }
  const header = parsed.meta.fields ?? [];
  const missing = SCHEMA_COLUMNS.filter((c) => !header.includes(c));
  if (missing.length > 0) {
    throw new Error(`${source}: missing columns: ${missing.join(", ")}`);
  }
  if (parsed.data.length === 0) {
    throw new Error(`${source}: no data rows`);
  }
  return parsed.data;
}

export function readCsvFiles(paths: readonly string[]): Row[] {
  if (paths.length === 0) {
    throw new Error("no input CSV given");
  }
  return paths.flatMap((p) =>
    parseExperimentCsv(fs.readFileSync(p, "utf-8"), p),
  );
}

export function numberField(row: Row, column: string): number {
  const raw = row[column];
  const value = Number(raw);
  if (raw === undefined || raw === "" || Number.isNaN(value)) {
    throw new Error(`cannot read ${column}=${raw ?? "<absent>"} as a number`);
  }
  return value;
}
