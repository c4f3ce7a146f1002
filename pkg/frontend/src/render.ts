import fs from "node:fs";
import path from "node:path";
import { Resvg } from "@resvg/resvg-js";
import { readCsvFiles } from "./csv.js";
import { PlotSpec, assembleSeries } from "./plot.js";
import { figureSvg } from "./svg.js";

export function renderSvg(spec: PlotSpec): string {
  const rows = readCsvFiles(spec.csvPaths);
  return figureSvg(assembleSeries(rows, spec), spec);
}

/**
 * Render to spec.out. A .png suffix writes both the PNG and the SVG it
 * was rasterized from; anything else writes SVG only. Nothing touches
 * the filesystem until the markup is complete, so a bad spec leaves no
 * partial file behind.
 */
export function renderToFile(spec: PlotSpec): string[] {
  const svg = renderSvg(spec);
  const written: string[] = [];
  if (path.extname(spec.out) === ".png") {
    const svgPath = spec.out.slice(0, -4) + ".svg";
    fs.writeFileSync(svgPath, svg);
    written.push(svgPath);
    const png = new Resvg(svg).render().asPng();
    fs.writeFileSync(spec.out, png);
    written.push(spec.out);
  } else {
    fs.writeFileSync(spec.out, svg);
    written.push(spec.out);
  }
  return written;
}
