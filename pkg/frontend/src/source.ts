/**
 * Frame sources: a .y4m file, or a directory of .ppm/.pgm images taken as
 * frames in lexicographic filename order (zero-pad frame numbers when
 * producing such directories).
 */
import { readFileSync, readdirSync, statSync } from 'node:fs';
import { join, extname } from 'node:path';

import { FrameSequence } from './frame';
import { parsePnm } from './pnm';
import { parseY4m } from './y4m';

/** Load every frame of a video path. Directories have no frame rate. */
export function loadFrames(path: string): FrameSequence {
  const stats = statSync(path);
  if (stats.isDirectory()) {
    const names = readdirSync(path)
      .filter(name => ['.ppm', '.pgm'].includes(extname(name).toLowerCase()))
      .sort();
    if (names.length === 0) {
      throw new Error(`${path}: no .ppm or .pgm frames found`);
    }
    const frames = names.map(name => {
      try {
        return parsePnm(readFileSync(join(path, name)));
      } catch (err) {
        throw new Error(`${join(path, name)}: ${(err as Error).message}`);
      }
    });
    const first = frames[0];
    for (let i = 1; i < frames.length; i++) {
      if (frames[i].width !== first.width || frames[i].height !== first.height) {
        throw new Error(
          `${join(path, names[i])}: size ${frames[i].width}x${frames[i].height} ` +
            `differs from first frame ${first.width}x${first.height}`,
        );
      }
    }
    return { frames, fpsNum: 0, fpsDen: 0 };
  }

  if (extname(path).toLowerCase() !== '.y4m') {
    throw new Error(`${path}: expected a .y4m file or a directory of .ppm/.pgm frames`);
  }
  try {
    const sequence = parseY4m(readFileSync(path));
    if (sequence.frames.length === 0) {
      throw new Error('stream holds zero frames');
    }
    return sequence;
  } catch (err) {
    throw new Error(`${path}: ${(err as Error).message}`);
  }
}
