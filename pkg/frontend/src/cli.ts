#!/usr/bin/env node
import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { PlotSpec } from "./plot.js";
import { renderToFile } from "./render.js";

export function parseArgs(argv: string[]): PlotSpec {
  const args = yargs(argv)
    .scriptName("rggplot")
    .usage("$0 --csv <file> --x <col> --y <metric> [--group <cols>] [--band 20,80] --out <path>")
    .option("csv", { type: "string", array: true, demandOption: true })
    .option("x", { type: "string", default: "n" })
    .option("y", { type: "string", demandOption: true })
    .option("group", { type: "string", default: "" })
    .option("band", { type: "string", default: "20,80" })
    .option("out", { type: "string", demandOption: true })
    .strict()
    .parseSync();
  const band = args.band.split(",").map(Number);
  if (band.length !== 2 || band.some(Number.isNaN)) {
    throw new Error(`--band wants two percentiles like 20,80, got ${args.band}`);
  }
  return {
    csvPaths: args.csv,
    x: args.x,
    y: args.y,
    group: args.group === "" ? [] : args.group.split(","),
    band: [band[0], band[1]],
    out: args.out,
  };
}

export function main(argv: string[]): number {
  try {
    const written = renderToFile(parseArgs(argv));
    for (const p of written) {
      console.log(`wrote ${p}`);
    }
    return 0;
  } catch (err) {
    console.error(`rggplot: ${err instanceof Error ? err.message : err}`);
    return 2;
  }
}

const invoked = process.argv[1] ?? "";
if (invoked.endsWith("cli.js") || invoked.endsWith("rggplot")) {
  process.exit(main(hideBin(process.argv)));
}
