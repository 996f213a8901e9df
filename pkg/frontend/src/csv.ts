/**
 * Strict parsers for the entvol CSV contracts.
 *
 * Two schemas exist: the per-criterion "run" schema and the "sweep-alpha"
 * schema.  The header must match a schema exactly (names and order); any
 * deviation fails with a diagnostic naming the offending columns so a schema
 * drift is caught instead of silently misplotting.
 */

export const RUN_HEADER = [
  'family', 'dims', 'criterion', 'alpha', 'count', 'total',
  'ratio', 'std_error', 'inconclusive', 'seed', 'samples',
] as const;

export const SWEEP_HEADER = [
  'family', 'alpha', 'one_over_alpha', 'ratio', 'std_error',
] as const;

export interface RunRow {
  family: string;
  dims: string;
  criterion: string;
  alpha: string;
  count: number;
  total: number;
  ratio: number;
  stdError: number;
  inconclusive: boolean;
  seed: number;
  samples: number;
}

export interface SweepRow {
  family: string;
  alpha: string;
  oneOverAlpha: number;
  ratio: number;
  stdError: number;
}

export class CsvSchemaError extends Error {}

function splitCsv(text: string, source: string): string[][] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new CsvSchemaError(`${source}: file is empty`);
  }
  // entvol never quotes fields, so a plain comma split is the whole grammar
  return lines.map((line) => line.split(','));
}

function checkHeader(got: string[], expected: readonly string[], source: string): void {
  if (got.length === expected.length && expected.every((c, i) => got[i] === c)) {
    return;
  }
  const missing = expected.filter((c) => !got.includes(c));
  const unexpected = got.filter((c) => !(expected as readonly string[]).includes(c));
  const parts = [`${source}: header does not match the expected schema`];
  parts.push(`expected [${expected.join(', ')}]`);
  parts.push(`got [${got.join(', ')}]`);
  if (missing.length) parts.push(`missing columns: ${missing.join(', ')}`);
  if (unexpected.length) parts.push(`unexpected columns: ${unexpected.join(', ')}`);
  throw new CsvSchemaError(parts.join('; '));
}

function toNumber(value: string, column: string, line: number, source: string): number {
  const parsed = Number(value);
  if (value === '' || Number.isNaN(parsed)) {
    throw new CsvSchemaError(`${source}:${line}: column ${column} has non-numeric value '${value}'`);
  }
  return parsed;
}

export function parseRunCsv(text: string, source = 'run csv'): RunRow[] {
  const [header, ...rows] = splitCsv(text, source);
  checkHeader(header, RUN_HEADER, source);
  if (rows.length === 0) {
    throw new CsvSchemaError(`${source}: no data rows`);
  }
  return rows.map((cells, i) => {
    const line = i + 2;
    if (cells.length !== RUN_HEADER.length) {
      throw new CsvSchemaError(`${source}:${line}: expected ${RUN_HEADER.length} fields, got ${cells.length}`);
    }
    return {
      family: cells[0],
      dims: cells[1],
      criterion: cells[2],
      alpha: cells[3],
      count: toNumber(cells[4], 'count', line, source),
      total: toNumber(cells[5], 'total', line, source),
      ratio: toNumber(cells[6], 'ratio', line, source),
      stdError: toNumber(cells[7], 'std_error', line, source),
      inconclusive: cells[8] === 'true',
      seed: toNumber(cells[9], 'seed', line, source),
      samples: toNumber(cells[10], 'samples', line, source),
    };
  });
}

export function parseSweepCsv(text: string, source = 'sweep csv'): SweepRow[] {
  const [header, ...rows] = splitCsv(text, source);
  checkHeader(header, SWEEP_HEADER, source);
  if (rows.length === 0) {
    throw new CsvSchemaError(`${source}: no data rows`);
  }
  return rows.map((cells, i) => {
    const line = i + 2;
    if (cells.length !== SWEEP_HEADER.length) {
      throw new CsvSchemaError(`${source}:${line}: expected ${SWEEP_HEADER.length} fields, got ${cells.length}`);
    }
    return {
      family: cells[0],
      alpha: cells[1],
      oneOverAlpha: toNumber(cells[2], 'one_over_alpha', line, source),
      ratio: toNumber(cells[3], 'ratio', line, source),
      stdError: toNumber(cells[4], 'std_error', line, source),
    };
  });
}

/** Euclidean coordinate-space dimension d = (nA * nB)^2 - 1 of a "2x3" dims tag. */
export function dimsToBodyDimension(dims: string, source = 'run csv'): number {
  const match = /^(\d+)x(\d+)$/.exec(dims);
  if (!match) {
    throw new CsvSchemaError(`${source}: malformed dims value '${dims}'`);
  }
  const n = Number(match[1]) * Number(match[2]);
  return n * n - 1;
}
