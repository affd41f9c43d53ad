/** Shared fixtures: synthetic video buffers and a Python interop shim. */
import { execFileSync } from 'node:child_process';
import { mkdtempSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';

export function makeTempDir(prefix: string): string {
  return mkdtempSync(join(tmpdir(), prefix));
}

export interface Y4mOptions {
  width?: number;
  height?: number;
  fps?: [number, number];
  colorspace?: string;
}

function chromaBytes(colorspace: string, width: number, height: number): number {
  if (colorspace.startsWith('420')) return (width >> 1) * (height >> 1);
  if (colorspace === '422') return (width >> 1) * height;
  if (colorspace === '444') return width * height;
  if (colorspace === 'mono') return 0;
  throw new Error(`helper cannot lay out colorspace ${colorspace}`);
}

/** Build a .y4m buffer of constant-luma frames, one per entry of levels. */
export function makeY4m(levels: number[], opts: Y4mOptions = {}): Buffer {
  const width = opts.width ?? 8;
  const height = opts.height ?? 8;
  const [num, den] = opts.fps ?? [30, 1];
  const colorspace = opts.colorspace ?? '420jpeg';
  const chroma = chromaBytes(colorspace, width, height);

  const parts = [
    Buffer.from(`YUV4MPEG2 W${width} H${height} F${num}:${den} Ip A1:1 C${colorspace}\n`, 'ascii'),
  ];
  for (const level of levels) {
    parts.push(Buffer.from('FRAME\n', 'ascii'));
    parts.push(Buffer.alloc(width * height, level));
    if (chroma > 0) {
      parts.push(Buffer.alloc(chroma, 128));
      parts.push(Buffer.alloc(chroma, 128));
    }
  }
  return Buffer.concat(parts);
}

/** Build a binary PPM (P6) buffer filled with one RGB color. */
export function makeP6(
  width: number,
  height: number,
  rgb: [number, number, number],
  maxval = 255,
): Buffer {
  const header = Buffer.from(`P6\n${width} ${height}\n${maxval}\n`, 'ascii');
  const pixels = Buffer.alloc(width * height * 3);
  for (let p = 0; p < width * height; p++) {
    pixels[p * 3] = rgb[0];
    pixels[p * 3 + 1] = rgb[1];
    pixels[p * 3 + 2] = rgb[2];
  }
  return Buffer.concat([header, pixels]);
}

/** Build a binary PGM (P5) buffer from explicit sample values. */
export function makeP5(width: number, height: number, values: number[], maxval = 255): Buffer {
  const header = Buffer.from(`P5\n${width} ${height}\n${maxval}\n`, 'ascii');
  return Buffer.concat([header, Buffer.from(values)]);
}

/** Run a Python snippet that prints one JSON document and parse it. */
export function pythonJson(script: string): any {
  const out = execFileSync('python3', ['-c', script], { encoding: 'utf8' });
  return JSON.parse(out);
}
