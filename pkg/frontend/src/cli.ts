#!/usr/bin/env node
/**
 * Command line front end for the feature extractor.
 *
 * Exit codes: 0 on success, 1 for usage errors, 2 when the source cannot be
 * decoded or the output cannot be written.
 */
import yargs from 'yargs';
import { hideBin } from 'yargs/helpers';

import { DEFAULT_MODEL, MODELS } from './embed';
import { extractFeatures } from './extract';

function run(): number {
  const argv = yargs(hideBin(process.argv))
    .scriptName('keygraph-extract')
    .command('$0 <video>', 'extract per-frame features into a .spgf file', y =>
      y.positional('video', {
        type: 'string',
        demandOption: true,
        describe: 'a .y4m file or a directory of .ppm/.pgm frames',
      }),
    )
    .option('out', {
      type: 'string',
      demandOption: true,
      describe: 'destination feature file',
    })
    .option('stride', {
      type: 'number',
      describe: 'keep every stride-th frame (default 1)',
    })
    .option('fps', {
      type: 'number',
      describe: 'derive the stride from this target frame rate',
    })
    .option('model', {
      type: 'string',
      default: DEFAULT_MODEL,
      choices: Object.keys(MODELS),
      describe: 'built-in embedding model',
    })
    .conflicts('stride', 'fps')
    .check(args => {
      if (args.stride !== undefined && (!Number.isInteger(args.stride) || args.stride < 1)) {
        throw new Error(`stride must be a positive integer, got ${args.stride}`);
      }
      if (args.fps !== undefined && !(args.fps > 0)) {
        throw new Error(`target frame rate must be positive, got ${args.fps}`);
      }
      return true;
    })
    .strict()
    .parseSync();

  try {
    const result = extractFeatures(argv.video as string, {
      stride: argv.stride,
      targetFps: argv.fps,
      model: argv.model,
      out: argv.out,
    });
    console.log(
      `wrote ${result.outPath}: ${result.rows} rows x ${result.width} dims (stride ${result.stride})`,
    );
    return 0;
  } catch (err) {
    process.stderr.write(`keygraph-extract: ${(err as Error).message}\n`);
    return 2;
  }
}

process.exitCode = run();
