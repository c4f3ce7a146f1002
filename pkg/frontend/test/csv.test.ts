import { describe, expect, it } from "vitest";
import { numberField, parseExperimentCsv } from "../src/csv.js";

const HEADER = "experiment,d,n,gamma,model,trial,seed,metric_name,metric_value";

describe("parseExperimentCsv", () => {
  it("keeps every field as text", () => {
    const rows = parseExperimentCsv(
      `${HEADER}\nconnectivity,2,1000,0.84,disk,0,16814584860998154867,deficit,0.0\n`,
    );
    expect(rows).toHaveLength(1);
    expect(rows[0]["seed"]).toBe("16814584860998154867");
    expect(rows[0]["metric_value"]).toBe("0.0");
  });

  it("lists the missing columns", () => {
    expect(() =>
      parseExperimentCsv("experiment,d,n\nconnectivity,2,1000\n", "x.csv"),
    ).toThrow(/missing columns: gamma, model, trial, seed, metric_name, metric_value/);
  });

  it("rejects an empty body", () => {
    expect(() => parseExperimentCsv(`${HEADER}\n`)).toThrow(/no data rows/);
  });

  it("accepts an empty gamma field", () => {
    const rows = parseExperimentCsv(
      `${HEADER}\ncalibrate,2,1000,,disk,0,7,calibrated_radius,0.05\n`,
    );
    expect(rows[0]["gamma"]).toBe("");
  });
});

describe("numberField", () => {
  it("converts on demand and flags junk", () => {
    const row = { n: "1000", metric_value: "1.5", gamma: "" };
    expect(numberField(row, "n")).toBe(1000);
    expect(numberField(row, "metric_value")).toBe(1.5);
    expect(() => numberField(row, "gamma")).toThrow(/as a number/);
    expect(() => numberField(row, "absent")).toThrow(/as a number/);
  });
});
