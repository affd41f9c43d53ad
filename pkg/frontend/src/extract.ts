/**
 * End-to-end feature extraction: decode a video source, subsample frames,
 * embed each kept frame, and write the binary feature file the sampling
 * toolkit consumes.
 */
import { loadFrames } from './source';
import { DEFAULT_MODEL, loadEmbedder } from './embed';
import { writeSpgf } from './spgf';

export interface ExtractOptions {
  /** Keep every stride-th frame (default 1: keep all). */
  stride?: number;
  /** Alternative to stride: derive it from the source frame rate. */
  targetFps?: number;
  /** Built-in model name (default 'tiny-64'). */
  model?: string;
  /** Destination feature file. */
  out: string;
}

export interface ExtractResult {
  rows: number;
  width: number;
  stride: number;
  fpsNum: number;
  fpsDen: number;
  outPath: string;
}

/**
 * Extract features from a .y4m file or a directory of .ppm/.pgm frames.
 * Row i of the output corresponds to source frame i * stride.
 */
export function extractFeatures(videoPath: string, opts: ExtractOptions): ExtractResult {
  if (opts.stride !== undefined && opts.targetFps !== undefined) {
    throw new Error('choose either a stride or a target frame rate, not both');
  }

  const source = loadFrames(videoPath);
  let stride = 1;
  if (opts.stride !== undefined) {
    if (!Number.isInteger(opts.stride) || opts.stride < 1) {
      throw new Error(`stride must be a positive integer, got ${opts.stride}`);
    }
    stride = opts.stride;
  } else if (opts.targetFps !== undefined) {
    if (!(opts.targetFps > 0)) {
      throw new Error(`target frame rate must be positive, got ${opts.targetFps}`);
    }
    if (source.fpsNum === 0 || source.fpsDen === 0) {
      throw new Error('the source declares no frame rate, so --fps cannot derive a stride; use --stride');
    }
    stride = Math.max(1, Math.round(source.fpsNum / source.fpsDen / opts.targetFps));
  }

  const kept = source.frames.filter((_, i) => i % stride === 0);
  const embedder = loadEmbedder(opts.model ?? DEFAULT_MODEL);
  try {
    const rows = embedder.embedAll(kept);
    const matrix = new Float32Array(rows.length * embedder.width);
    rows.forEach((row, i) => matrix.set(row, i * embedder.width));
    writeSpgf(opts.out, matrix, {
      n: rows.length,
      k: embedder.width,
      frameStride: stride,
      fpsNum: source.fpsNum,
      fpsDen: source.fpsDen,
    });
    return {
      rows: rows.length,
      width: embedder.width,
      stride,
      fpsNum: source.fpsNum,
      fpsDen: source.fpsDen,
      outPath: opts.out,
    };
  } finally {
    embedder.dispose();
  }
}
