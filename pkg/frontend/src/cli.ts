#!/usr/bin/env node
/**
 * plots <kind> --in <csv> --out <svg> [options]
 *
 * kinds: convergence | theta_map | loci
 */

import { readFileSync, writeFileSync } from "node:fs";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { renderConvergence } from "./convergence.js";
import { renderLoci } from "./loci.js";
import { renderThetaMap } from "./thetaMap.js";
import {
  SchemaError,
  readConvergence,
  readLoci,
  readNodes,
  readThetaMap,
} from "./csv.js";

interface CommonArgs {
  in: string;
  out: string;
}

function render(kind: string, argv: CommonArgs & Record<string, unknown>): string {
  const text = readFileSync(argv.in, "utf-8");
  switch (kind) {
    case "convergence": {
      const slopes = argv.refs
        ? String(argv.refs).split(",").map(Number)
        : undefined;
      return renderConvergence(readConvergence(text), {
        referenceSlopes: slopes,
      });
    }
    case "theta_map": {
      const nodes = argv.nodes
        ? readNodes(readFileSync(String(argv.nodes), "utf-8"))
        : undefined;
      return renderThetaMap(readThetaMap(text), {
        nodes,
        colorMin: argv.cmin !== undefined ? Number(argv.cmin) : undefined,
        colorMax: argv.cmax !== undefined ? Number(argv.cmax) : undefined,
      });
    }
    case "loci":
      return renderLoci(readLoci(text));
    default:
      throw new Error(`unknown figure kind '${kind}'`);
  }
}

export function main(args: string[]): number {
  const argv = yargs(args)
    .command("convergence", "log-log convergence chart")
    .command("theta_map", "angular-plane heat map")
    .command("loci", "spectral-root loci grid")
    .demandCommand(1)
    .option("in", { type: "string", demandOption: true })
    .option("out", { type: "string", demandOption: true })
    .option("refs", { type: "string", describe: "reference slopes, e.g. 1,2,4" })
    .option("nodes", { type: "string", describe: "node overlay CSV (theta_map)" })
    .option("cmin", { type: "number", describe: "color scale lower bound" })
    .option("cmax", { type: "number", describe: "color scale upper bound" })
    .strict()
    .parseSync();

  const kind = String(argv._[0]);
  try {
    const svg = render(kind, argv as unknown as CommonArgs & Record<string, unknown>);
    writeFileSync(argv.out as string, svg, "utf-8");
    console.log(`wrote ${argv.out}`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema error: ${err.message}`);
      return 2;
    }
    console.error(String(err instanceof Error ? err.message : err));
    return 1;
  }
}

const invokedDirectly = process.argv[1] !== undefined
  && import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (invokedDirectly) {
  process.exit(main(hideBin(process.argv)));
}
