import { describe, expect, it } from "vitest";
import { median, quantile } from "../src/stats.js";

// plain sort-and-interpolate reference, written independently
function reference(values: number[], p: number): number {
  const s = values.slice().sort((a, b) => a - b);
  const rank = (p / 100) * (s.length - 1);
  const below = Math.min(Math.floor(rank), s.length - 1);
  const weight = rank - below;
  if (weight === 0) return s[below];
  return s[below] * (1 - weight) + s[below + 1] * weight;
}

// deterministic xorshift so the comparison set never changes
function* prng(seed: number): Generator<number> {
  let state = seed >>> 0;
  for (;;) {
    state ^= state << 13;
    state ^= state >>> 17;
    state ^= state << 5;
    state >>>= 0;
    yield state / 2 ** 32;
  }
}

describe("quantile", () => {
  it("matches the documented band for trials 1..10", () => {
    const trials = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10];
    expect(quantile(trials, 20)).toBeCloseTo(2.8, 12);
    expect(quantile(trials, 80)).toBeCloseTo(8.2, 12);
  });

  it("is exact at the endpoints and the median", () => {
    const v = [5, 1, 9];
    expect(quantile(v, 0)).toBe(1);
    expect(quantile(v, 100)).toBe(9);
    expect(quantile(v, 50)).toBe(5);
    expect(median([2, 4])).toBe(3);
  });

  it("agrees with an independent interpolation to 1e-12", () => {
    const gen = prng(0xc0ffee);
    for (let size = 1; size <= 40; size += 3) {
      const values = Array.from({ length: size }, () => gen.next().value * 10);
      for (const p of [0, 7, 20, 33.3, 50, 80, 95, 100]) {
        expect(Math.abs(quantile(values, p) - reference(values, p))).toBeLessThan(1e-12);
      }
    }
  });

  it("does not reorder its input", () => {
    const v = [3, 1, 2];
    quantile(v, 50);
    expect(v).toEqual([3, 1, 2]);
  });

  it("rejects empty samples and bad percentiles", () => {
    expect(() => quantile([], 50)).toThrow(/empty/);
    expect(() => quantile([1], 101)).toThrow(/percentile/);
    expect(() => quantile([1], -1)).toThrow(/percentile/);
  });
});
