/**
 * Percentiles by linear interpolation between closest ranks: the value
 * at fractional rank h = (n - 1) * p / 100 of the sorted sample. With
 * trials {1..10} the 20th/80th percentiles land at 2.8 and 8.2.
 */
export function quantile(values: readonly number[], p: number): number {
  if (values.length === 0) {
    throw new Error("quantile of an empty sample");
  }
  if (!(p >= 0 && p <= 100)) {
    throw new Error(`percentile must be in [0, 100], got ${p}`);
  }
  const sorted = [...values].sort((a, b) => a - b);
  const h = ((sorted.length - 1) * p) / 100;
  const lo = Math.floor(h);
  const hi = Math.ceil(h);
  if (lo === hi) {
    return sorted[lo];
  }
  return sorted[lo] + (h - lo) * (sorted[hi] - sorted[lo]);
}

export function median(values: readonly number[]): number {
  return quantile(values, 50);
}
