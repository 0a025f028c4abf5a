#!/usr/bin/env node
// kinkplot <kind> --in diagnostics.csv --out figure.svg
import { readFileSync, writeFileSync } from 'node:fs';
import { CsvError } from './csv.js';
import { FIGURE_KINDS, renderFigure } from './figures.js';

function usage(): string {
  return `usage: kinkplot <kind> --in file.csv --out fig.svg\n  kinds: ${FIGURE_KINDS.join(', ')}`;
}

export function main(argv: string[]): number {
  const args = [...argv];
  const kind = args.shift();
  let input: string | undefined;
  let output: string | undefined;
  while (args.length > 0) {
    const flag = args.shift();
    if (flag === '--in') input = args.shift();
    else if (flag === '--out') output = args.shift();
    else {
      process.stderr.write(`unknown argument: ${flag}\n${usage()}\n`);
      return 2;
    }
  }
  if (!kind || !input || !output) {
    process.stderr.write(usage() + '\n');
    return 2;
  }
  let csv: string;
  try {
    csv = readFileSync(input, 'utf8');
  } catch {
    process.stderr.write(`cannot read input file: ${input}\n`);
    return 2;
  }
  try {
    const result = renderFigure(kind, csv);
    writeFileSync(output, result.svg);
    return 0;
  } catch (err) {
    if (err instanceof CsvError) {
      process.stderr.write(`${err.message}\n`);
      return 2;
    }
    throw err;
  }
}

process.exit(main(process.argv.slice(2)));
