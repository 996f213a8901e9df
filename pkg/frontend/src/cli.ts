#!/usr/bin/env node
/**
 * plot --kind <alpha-sweep|renyi-dims|ppt-decay> --in <csv...> --out <svg>
 *
 * Reads entvol result CSVs and writes one SVG figure.  Nothing is written
 * when parsing or validation fails; exit codes are 0 on success, 2 for usage
 * errors and 3 for data errors (schema mismatch, empty input, bad values).
 */

import { readFileSync, writeFileSync } from 'node:fs';
import { pathToFileURL } from 'node:url';
import { parseArgs } from 'node:util';

import { CsvSchemaError, parseRunCsv, parseSweepCsv } from './csv.js';
import { renderAlphaSweep, renderPptDecay, renderRenyiDims } from './charts.js';

const KINDS = ['alpha-sweep', 'renyi-dims', 'ppt-decay'] as const;
type Kind = (typeof KINDS)[number];

const USAGE = `usage: plot --kind <${KINDS.join('|')}> --in <csv> [--in <csv> ...] --out <file.svg>`;

export function runCli(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      options: {
        kind: { type: 'string' },
        in: { type: 'string', multiple: true },
        out: { type: 'string' },
      },
      allowPositionals: false,
    });
  } catch (error) {
    console.error(`plot: ${(error as Error).message}`);
    console.error(USAGE);
    return 2;
  }
  const { kind, in: inputs, out } = parsed.values;
  if (!kind || !KINDS.includes(kind as Kind) || !inputs?.length || !out) {
    console.error(USAGE);
    return 2;
  }

  let svg: string;
  try {
    svg = renderKind(kind as Kind, inputs);
  } catch (error) {
    if (error instanceof CsvSchemaError) {
      console.error(`plot: schema error: ${error.message}`);
    } else {
      console.error(`plot: ${(error as Error).message}`);
    }
    return 3;
  }
  writeFileSync(out, svg);
  console.log(`wrote ${out}`);
  return 0;
}

function renderKind(kind: Kind, inputs: string[]): string {
  if (kind === 'alpha-sweep') {
    const rows = inputs.flatMap((path) => parseSweepCsv(readFileSync(path, 'utf8'), path));
    return renderAlphaSweep(rows);
  }
  const rows = inputs.flatMap((path) => parseRunCsv(readFileSync(path, 'utf8'), path));
  return kind === 'renyi-dims' ? renderRenyiDims(rows) : renderPptDecay(rows);
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(runCli(process.argv.slice(2)));
}
