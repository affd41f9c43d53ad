/**
 * Deterministic frame embedders.
 *
 * Each model is a small convolutional network whose weights are generated
 * from a fixed seed, so the same frames always produce the same features on
 * every machine with no downloads involved. The networks are not trained;
 * random convolutions followed by pooling preserve enough locality that
 * near-identical frames land on near-identical features, which is the only
 * property downstream graph construction needs. Preprocessing: bilinear
 * resize to 32x32, channels in [0, 1].
 */
import * as tf from '@tensorflow/tfjs';

import { DecodedFrame } from './frame';

// keep stderr for errors: this flag turns off the library's install-hint banner
tf.env().set('PROD', true);

const INPUT_SIZE = 32;
const BATCH = 8;

interface EmbedderSpec {
  width: number;
  seed: number;
}

/** Built-in models by name; width is the feature dimension K. */
export const MODELS: Record<string, EmbedderSpec> = {
  'tiny-64': { width: 64, seed: 0x40001 },
  'tiny-16': { width: 16, seed: 0x10001 },
};

export const DEFAULT_MODEL = 'tiny-64';

/** Deterministic 32-bit PRNG (mulberry32), uniform on [0, 1). */
function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

/** Standard normal samples via Box-Muller over the seeded uniform stream. */
function gaussianFill(rand: () => number, count: number, scale: number): Float32Array {
  const out = new Float32Array(count);
  for (let i = 0; i < count; i += 2) {
    const u = Math.max(rand(), 1e-12);
    const v = rand();
    const r = Math.sqrt(-2 * Math.log(u)) * scale;
    out[i] = r * Math.cos(2 * Math.PI * v);
    if (i + 1 < count) {
      out[i + 1] = r * Math.sin(2 * Math.PI * v);
    }
  }
  return out;
}

export class Embedder {
  readonly name: string;
  readonly width: number;
  private readonly conv1: tf.Tensor4D;
  private readonly bias1: tf.Tensor1D;
  private readonly conv2: tf.Tensor4D;
  private readonly bias2: tf.Tensor1D;
  private readonly dense: tf.Tensor2D;
  private readonly biasOut: tf.Tensor1D;

  constructor(name: string, spec: EmbedderSpec) {
    const rand = mulberry32(spec.seed);
    const weight = (shape: number[], fanIn: number) =>
      gaussianFill(rand, shape.reduce((a, b) => a * b, 1), Math.sqrt(2 / fanIn));

    this.name = name;
    this.width = spec.width;
    this.conv1 = tf.tensor4d(weight([3, 3, 3, 16], 3 * 3 * 3), [3, 3, 3, 16]);
    this.bias1 = tf.tensor1d(gaussianFill(rand, 16, 0.1));
    this.conv2 = tf.tensor4d(weight([3, 3, 16, 32], 3 * 3 * 16), [3, 3, 16, 32]);
    this.bias2 = tf.tensor1d(gaussianFill(rand, 32, 0.1));
    this.dense = tf.tensor2d(weight([32, spec.width], 32), [32, spec.width]);
    this.biasOut = tf.tensor1d(gaussianFill(rand, spec.width, 0.5));
  }

  /** Embed frames in order; the result is one Float32Array per frame. */
  embedAll(frames: DecodedFrame[]): Float32Array[] {
    const rows: Float32Array[] = [];
    for (let start = 0; start < frames.length; start += BATCH) {
      const chunk = frames.slice(start, start + BATCH);
      const batch = tf.tidy(() => {
        const imgs = chunk.map(frame =>
          tf.image.resizeBilinear(
            tf.tensor3d(frame.pixels, [frame.height, frame.width, 3]),
            [INPUT_SIZE, INPUT_SIZE],
          ),
        );
        const block = (input: tf.Tensor4D, kernel: tf.Tensor4D, bias: tf.Tensor1D): tf.Tensor4D => {
          const activated = tf.relu(tf.add(tf.conv2d(input, kernel, 1, 'same'), bias)) as tf.Tensor4D;
          return tf.maxPool(activated, 2, 2, 'same');
        };
        let x = tf.stack(imgs) as tf.Tensor4D;
        x = block(x, this.conv1, this.bias1);
        x = block(x, this.conv2, this.bias2);
        const pooled = tf.mean(x, [1, 2]) as tf.Tensor2D;
        return tf.tanh(tf.add(tf.matMul(pooled, this.dense), this.biasOut)) as tf.Tensor2D;
      });
      const flat = batch.dataSync() as Float32Array;
      batch.dispose();
      for (let i = 0; i < chunk.length; i++) {
        rows.push(flat.slice(i * this.width, (i + 1) * this.width));
      }
    }
    return rows;
  }

  dispose(): void {
    this.conv1.dispose();
    this.bias1.dispose();
    this.conv2.dispose();
    this.bias2.dispose();
    this.dense.dispose();
    this.biasOut.dispose();
  }
}

/** Instantiate a built-in model; unknown names list what is available. */
export function loadEmbedder(name: string): Embedder {
  const spec = MODELS[name];
  if (spec === undefined) {
    throw new Error(`model ${name} is unavailable (choose from ${Object.keys(MODELS).join(', ')})`);
  }
  return new Embedder(name, spec);
}
