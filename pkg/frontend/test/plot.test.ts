import fs from "node:fs";
import path from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";
import { parseExperimentCsv } from "../src/csv.js";
import { PlotSpec, assembleSeries } from "../src/plot.js";

const here = path.dirname(fileURLToPath(import.meta.url));
const golden = parseExperimentCsv(
  fs.readFileSync(path.join(here, "fixtures", "golden.csv"), "utf-8"),
);

function spec(overrides: Partial<PlotSpec> = {}): PlotSpec {
  return {
    csvPaths: [],
    x: "n",
    y: "max_stretch",
    group: ["model"],
    band: [20, 80],
    out: "unused.svg",
    ...overrides,
  };
}

describe("assembleSeries", () => {
  it("builds one sorted series per group", () => {
    const series = assembleSeries(golden, spec());
    expect(series.map((s) => s.key)).toEqual(["model=disk", "model=soft"]);
    for (const s of series) {
      expect(s.points.map((p) => p.x)).toEqual([1000, 10000]);
    }
  });

  it("interpolates the band to 1e-12", () => {
    const disk = assembleSeries(golden, spec())[0];
    const at1000 = disk.points[0];
    expect(Math.abs(at1000.lo - 2.8)).toBeLessThan(1e-12);
    expect(Math.abs(at1000.hi - 8.2)).toBeLessThan(1e-12);
    expect(Math.abs(at1000.median - 5.5)).toBeLessThan(1e-12);
    const at10000 = disk.points[1];
    expect(Math.abs(at10000.lo - 1.4)).toBeLessThan(1e-12);
    expect(Math.abs(at10000.hi - 4.1)).toBeLessThan(1e-12);
  });

  it("collapses everything without group columns", () => {
    const series = assembleSeries(golden, spec({ group: [] }));
    expect(series).toHaveLength(1);
    expect(series[0].key).toBe("all");
  });

  it("keeps a constant metric as a zero-width band", () => {
    const constant = golden.map((r) => ({ ...r, metric_value: "1.0" }));
    for (const p of assembleSeries(constant, spec())[0].points) {
      expect(p.lo).toBe(1);
      expect(p.hi).toBe(1);
      expect(p.median).toBe(1);
    }
  });

  it("names unknown metrics and columns", () => {
    expect(() => assembleSeries(golden, spec({ y: "deficit" }))).toThrow(
      /no rows with metric_name=deficit; present: max_stretch/,
    );
    expect(() =>
      assembleSeries(golden, spec({ x: "epoch", group: ["solver"] })),
    ).toThrow(/missing columns: epoch, solver/);
  });

  it("rejects inverted band percentiles", () => {
    expect(() => assembleSeries(golden, spec({ band: [80, 20] }))).toThrow(/band/);
  });
});
