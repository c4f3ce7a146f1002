import { PlotSpec, Series } from "./plot.js";

const WIDTH = 640;
const HEIGHT = 420;
const MARGIN = { left: 64, right: 16, top: 18, bottom: 48 };
const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
];

const fmt = (v: number): string => v.toFixed(2);

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

function tickLabel(v: number): string {
  if (v !== 0 && (Math.abs(v) >= 1e5 || Math.abs(v) < 1e-3)) {
    const e = v.toExponential(0);
    return e.replace("e+", "e");
  }
  return Number(v.toPrecision(12)).toString();
}

function niceStep(raw: number): number {
  const pow = 10 ** Math.floor(Math.log10(raw));
  const frac = raw / pow;
  const nice = frac < 1.5 ? 1 : frac < 3 ? 2 : frac < 7 ? 5 : 10;
  return nice * pow;
}

function linearTicks(min: number, max: number, count = 5): number[] {
  if (!(max > min)) {
    return [min];
  }
  const step = niceStep((max - min) / (count - 1));
  const ticks: number[] = [];
  for (let v = Math.ceil(min / step) * step; v <= max + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

function decadeTicks(min: number, max: number): number[] {
  const ticks: number[] = [];
  for (let k = Math.ceil(Math.log10(min) - 1e-9); 10 ** k <= max * (1 + 1e-9); k++) {
    ticks.push(10 ** k);
  }
  return ticks.length > 0 ? ticks : [min];
}

interface Scale {
  pos(v: number): number;
  ticks: number[];
}

function makeScale(
  values: number[],
  lo: number,
  hi: number,
  log: boolean,
): Scale {
  const t = (v: number): number => (log ? Math.log10(v) : v);
  let min = Math.min(...values);
  let max = Math.max(...values);
  const ticks = log ? decadeTicks(min, max) : linearTicks(min, max);
  let a = t(min);
  let b = t(max);
  if (a === b) {
    const pad = Math.max(Math.abs(a) * 0.05, 0.5);
    a -= pad;
    b += pad;
  } else {
    const pad = (b - a) * 0.04;
    a -= pad;
    b += pad;
  }
  return {
    pos: (v) => lo + ((t(v) - a) / (b - a)) * (hi - lo),
    ticks,
  };
}

/** Assemble the figure markup; pure string work, no I/O. */
export function figureSvg(series: Series[], spec: PlotSpec): string {
  const left = MARGIN.left;
  const right = WIDTH - MARGIN.right;
  const top = MARGIN.top;
  const bottom = HEIGHT - MARGIN.bottom;

  const xs = series.flatMap((s) => s.points.map((p) => p.x));
  const ys = series.flatMap((s) => s.points.flatMap((p) => [p.lo, p.hi]));
  const logX = spec.x === "n" && Math.min(...xs) > 0;
  const sx = makeScale(xs, left, right, logX);
  // y grows upward, pixel rows downward
  const sy = makeScale(ys, bottom, top, false);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif" font-size="12">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);

  for (const v of sx.ticks) {
    const x = fmt(sx.pos(v));
    parts.push(
      `<line x1="${x}" y1="${top}" x2="${x}" y2="${bottom}" stroke="#dddddd"/>`,
    );
    parts.push(
      `<text x="${x}" y="${bottom + 18}" text-anchor="middle">${tickLabel(v)}</text>`,
    );
  }
  for (const v of sy.ticks) {
    const y = fmt(sy.pos(v));
    parts.push(
      `<line x1="${left}" y1="${y}" x2="${right}" y2="${y}" stroke="#dddddd"/>`,
    );
    parts.push(
      `<text x="${left - 6}" y="${y}" dy="4" text-anchor="end">${tickLabel(v)}</text>`,
    );
  }
  parts.push(
    `<rect x="${left}" y="${top}" width="${right - left}" height="${bottom - top}" ` +
      `fill="none" stroke="black"/>`,
  );

  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const px = s.points.map((p) => fmt(sx.pos(p.x)));
    const band = [
      ...s.points.map((p, j) => `${j === 0 ? "M" : "L"}${px[j]},${fmt(sy.pos(p.lo))}`),
      ...[...s.points].reverse().map((p, j) =>
        `L${px[s.points.length - 1 - j]},${fmt(sy.pos(p.hi))}`,
      ),
      "Z",
    ].join("");
    parts.push(`<path d="${band}" fill="${color}" fill-opacity="0.18"/>`);
    const line = s.points
      .map((p, j) => `${j === 0 ? "M" : "L"}${px[j]},${fmt(sy.pos(p.median))}`)
      .join("");
    parts.push(`<path d="${line}" fill="none" stroke="${color}" stroke-width="1.5"/>`);
    for (let j = 0; j < s.points.length; j++) {
      parts.push(
        `<circle cx="${px[j]}" cy="${fmt(sy.pos(s.points[j].median))}" r="2.5" fill="${color}"/>`,
      );
    }
  });

  parts.push(
    `<text x="${fmt((left + right) / 2)}" y="${HEIGHT - 10}" text-anchor="middle">` +
      `${escapeXml(spec.x)}</text>`,
  );
  parts.push(
    `<text x="16" y="${fmt((top + bottom) / 2)}" text-anchor="middle" ` +
      `transform="rotate(-90 16 ${fmt((top + bottom) / 2)})">${escapeXml(spec.y)}</text>`,
  );

  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const y = top + 14 + i * 16;
    parts.push(
      `<rect x="${right - 150}" y="${y - 9}" width="10" height="10" fill="${color}"/>`,
    );
    parts.push(`<text x="${right - 136}" y="${y}">${escapeXml(s.key)}</text>`);
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
