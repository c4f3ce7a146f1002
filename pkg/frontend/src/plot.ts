import { Row, SCHEMA_COLUMNS, numberField } from "./csv.js";
import { median, quantile } from "./stats.js";

export interface PlotSpec {
  csvPaths: string[];
  x: string;
  y: string;
  group: string[];
  band: [number, number];
  out: string;
}

export interface BandPoint {
  x: number;
  median: number;
  lo: number;
  hi: number;
}

export interface Series {
  key: string;
  points: BandPoint[];
}

function checkColumns(spec: PlotSpec): void {
  const known: readonly string[] = SCHEMA_COLUMNS;
  const missing = [spec.x, ...spec.group].filter((c) => !known.includes(c));
  if (missing.length > 0) {
    throw new Error(`missing columns: ${missing.join(", ")}`);
  }
  const [lo, hi] = spec.band;
  if (!(lo >= 0 && hi <= 100 && lo <= hi)) {
    throw new Error(`band percentiles must satisfy 0 <= lo <= hi <= 100, got ${lo},${hi}`);
  }
}

/**
 * Collapse rows into one series per group value: at each x, the median
 * of metric_value across trials plus the band percentiles. Series and
 * points come out sorted, so assembly order never shows in the output.
 */
export function assembleSeries(rows: Row[], spec: PlotSpec): Series[] {
  checkColumns(spec);
  const matching = rows.filter((r) => r["metric_name"] === spec.y);
  if (matching.length === 0) {
    const seen = [...new Set(rows.map((r) => r["metric_name"]))].sort();
    throw new Error(
      `no rows with metric_name=${spec.y}; present: ${seen.join(", ")}`,
    );
  }
  const buckets = new Map<string, Map<number, number[]>>();
  for (const row of matching) {
    const key = spec.group.map((c) => `${c}=${row[c]}`).join(" ") || "all";
    const x = numberField(row, spec.x);
    let perX = buckets.get(key);
    if (perX === undefined) {
      buckets.set(key, (perX = new Map()));
    }
    let values = perX.get(x);
    if (values === undefined) {
      perX.set(x, (values = []));
    }
    values.push(numberField(row, "metric_value"));
  }
  return [...buckets.keys()].sort().map((key) => {
    const perX = buckets.get(key)!;
    const points = [...perX.keys()]
      .sort((a, b) => a - b)
      .map((x) => {
        const values = perX.get(x)!;
        return {
          x,
          median: median(values),
          lo: quantile(values, spec.band[0]),
          hi: quantile(values, spec.band[1]),
        };
      });
    return { key, points };
  });
}
