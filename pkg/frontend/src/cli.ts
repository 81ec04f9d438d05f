#!/usr/bin/env node
import { readFileSync, writeFileSync } from "node:fs";

import { CsvFormatError, FigureKind, parseFigureCsv } from "./csv.js";
import { renderFigure } from "./svg.js";

const USAGE = "usage: qcap-plot --kind fig1|fig2 --in <csv> --out <image>";

interface Args {
  kind: FigureKind;
  input: string;
  output: string;
}

export function parseArgs(argv: string[]): Args {
  let kind: string | undefined;
  let input: string | undefined;
  let output: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    switch (argv[i]) {
      case "--kind":
        kind = argv[++i];
        break;
      case "--in":
        input = argv[++i];
        break;
      case "--out":
        output = argv[++i];
        break;
      default:
        throw new Error(`unknown argument "${argv[i]}"\n${USAGE}`);
    }
  }
  if (kind !== "fig1" && kind !== "fig2") {
    throw new Error(`--kind must be fig1 or fig2\n${USAGE}`);
  }
  if (!input || !output) {
    throw new Error(`--in and --out are required\n${USAGE}`);
  }
  return { kind, input, output };
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    process.stderr.write(`${(err as Error).message}\n`);
    return 1;
  }
  try {
    const text = readFileSync(args.input, "utf8");
    const svg = renderFigure(parseFigureCsv(args.kind, text));
    writeFileSync(args.output, svg);
  } catch (err) {
    const prefix = err instanceof CsvFormatError ? "csv error" : "error";
    process.stderr.write(`${prefix}: ${(err as Error).message}\n`);
    return 1;
  }
  return 0;
}

if (process.argv[1] && /cli\.js$/.test(process.argv[1])) {
  process.exit(main(process.argv.slice(2)));
}
