#!/usr/bin/env node
/** plots <figure-kind> --in <csv|json> [--summary <json>] --out <img> [--dump-matrix <path>] */

import { FigureKind, render } from "./figures.js";

const KINDS: FigureKind[] = ["energy-decay", "block-heatmap", "loss-fit", "suite-summary"];

function usage(): never {
  console.error(`usage: plots <${KINDS.join("|")}> --in <path> [--summary <json>] --out <img> [--dump-matrix <path>]`);
  process.exit(2);
}

export function main(argv: string[]): number {
  if (argv.length === 0) {
    usage();
  }
  const kind = argv[0] as FigureKind;
  if (!KINDS.includes(kind)) {
    console.error(`unknown figure kind: ${argv[0]}`);
    usage();
  }
  const flags = new Map<string, string>();
  for (let i = 1; i < argv.length; i += 2) {
    if (!argv[i].startsWith("--") || i + 1 >= argv.length) {
      usage();
    }
    flags.set(argv[i].slice(2), argv[i + 1]);
  }
  const input = flags.get("in");
  const output = flags.get("out");
  if (!input || !output) {
    usage();
  }
  try {
    render({
      kind,
      input,
      output,
      summary: flags.get("summary"),
      dumpMatrix: flags.get("dump-matrix"),
    });
  } catch (err) {
    console.error(String(err));
    return 1;
  }
  console.log(`wrote ${output}`);
  return 0;
}

if (import.meta.url === `file://${process.argv[1]}`) {
  process.exit(main(process.argv.slice(2)));
}
