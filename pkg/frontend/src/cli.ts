/**
 * Render prft validation figures:
 *
 *   node dist/cli.js --in RUN_DIR --out OUT_DIR [--kinds pdf,acf,psd,periodogram,qq,asv]
 *
 * RUN_DIR is a directory written by `prft validate` (the plot-ready CSVs);
 * one SVG per requested kind lands in OUT_DIR.
 */

import { argv, exit, stderr, stdout } from "node:process";
import { pathToFileURL } from "node:url";

import { parseKinds, renderAll } from "./render.js";

function parseArgs(args: string[]): Map<string, string> {
  const out = new Map<string, string>();
  for (let i = 0; i < args.length; i += 1) {
    const arg = args[i];
    if (!arg.startsWith("--")) {
      throw new Error(`unexpected argument "${arg}"`);
    }
    const value = args[i + 1];
    if (value === undefined || value.startsWith("--")) {
      throw new Error(`flag ${arg} needs a value`);
    }
    out.set(arg.slice(2), value);
    i += 1;
  }
  return out;
}

export function main(args: string[]): number {
  let flags: Map<string, string>;
  try {
    flags = parseArgs(args);
    const inDir = flags.get("in");
    const outDir = flags.get("out");
    if (!inDir || !outDir) {
      throw new Error("both --in and --out are required");
    }
    const kinds = parseKinds(flags.get("kinds"));
    const results = renderAll(kinds, inDir, outDir);
    for (const result of results) {
      stdout.write(`wrote ${result.path}\n`);
    }
    return 0;
  } catch (error) {
    stderr.write(`error: ${error instanceof Error ? error.message : String(error)}\n`);
    return 1;
  }
}

if (argv[1] && import.meta.url === pathToFileURL(argv[1]).href) {
  exit(main(argv.slice(2)));
}
