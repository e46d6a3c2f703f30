/**
 * CLI: degsym-plots --csv FILE --x n --series c1 --out FILE.svg
 *                   [--log-x] [--log-y]
 *
 * Reads a harness sweep CSV and writes one deterministic SVG figure.
 */
import { readFileSync, writeFileSync } from "node:fs";
import { exit, argv, stderr } from "node:process";

import { parseSweepCsv, EmptyInput, MissingColumn } from "./csv.js";
import { render } from "./render.js";

interface Args {
  csv: string;
  x: string;
  series: string;
  out: string;
  logX: boolean;
  logY: boolean;
}

function parseArgs(args: string[]): Args {
  const out: Partial<Args> = { logX: false, logY: false };
  for (let i = 0; i < args.length; i++) {
    const a = args[i];
    const next = () => {
      i += 1;
      if (i >= args.length) {
        throw new Error(`flag ${a} needs a value`);
      }
      return args[i];
    };
    switch (a) {
      case "--csv":
        out.csv = next();
        break;
      case "--x":
        out.x = next();
        break;
      case "--series":
        out.series = next();
        break;
      case "--out":
        out.out = next();
        break;
      case "--log-x":
        out.logX = true;
        break;
      case "--log-y":
        out.logY = true;
        break;
      default:
        throw new Error(`unknown flag ${a}`);
    }
  }
  for (const required of ["csv", "x", "series", "out"] as const) {
    if (out[required] === undefined) {
      throw new Error(`--${required} is required`);
    }
  }
  return out as Args;
}

export function main(args: string[]): number {
  let parsed: Args;
  try {
    parsed = parseArgs(args);
  } catch (err) {
    stderr.write(`usage error: ${(err as Error).message}\n`);
    stderr.write(
      "usage: degsym-plots --csv FILE --x COLUMN --series COLUMN --out FILE.svg [--log-x] [--log-y]\n",
    );
    return 2;
  }
  try {
    const rows = parseSweepCsv(readFileSync(parsed.csv, "utf-8"));
    const svg = render(rows, {
      x: parsed.x,
      series: parsed.series,
      logX: parsed.logX,
      logY: parsed.logY,
    });
    writeFileSync(parsed.out, svg);
  } catch (err) {
    if (err instanceof EmptyInput || err instanceof MissingColumn) {
      stderr.write(`${(err as Error).name}: ${(err as Error).message}\n`);
      return 1;
    }
    stderr.write(`error: ${(err as Error).message}\n`);
    return 1;
  }
  return 0;
}

exit(main(argv.slice(2)));
