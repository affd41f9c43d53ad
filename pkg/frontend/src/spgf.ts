/**
 * Writer for the binary feature-file format the keygraph package reads.
 *
 * Layout: a 36-byte little-endian header followed by the feature matrix as
 * row-major 32-bit floats.
 *
 *   bytes 0..3    magic "SPGF"
 *   bytes 4..7    format version, u32, currently 1
 *   bytes 8..15   N, row count, u64
 *   bytes 16..23  K, feature dimension, u64
 *   bytes 24..27  frame stride, u32
 *   bytes 28..31  fps numerator, u32 (0 if unknown)
 *   bytes 32..35  fps denominator, u32 (0 if unknown)
 *
 * A reader lives here too so round trips can be tested without leaving
 * this package; the authoritative consumer is keygraph's load_features.
 */
import { writeFileSync, readFileSync } from 'node:fs';

export const SPGF_MAGIC = 'SPGF';
export const SPGF_VERSION = 1;
export const HEADER_SIZE = 36;

export interface SpgfHeader {
  n: number;
  k: number;
  frameStride: number;
  fpsNum: number;
  fpsDen: number;
}

function checkField(name: string, value: number, min: number): void {
  if (!Number.isInteger(value) || value < min || value >= 2 ** 32) {
    throw new Error(`header field ${name} must be an integer in [${min}, 2^32), got ${value}`);
  }
}

/** Validate a header and serialize it to its 36-byte form. */
export function packHeader(header: SpgfHeader): Buffer {
  checkField('n', header.n, 1);
  checkField('k', header.k, 1);
  checkField('frameStride', header.frameStride, 1);
  checkField('fpsNum', header.fpsNum, 0);
  checkField('fpsDen', header.fpsDen, 0);

  const buf = Buffer.alloc(HEADER_SIZE);
  buf.write(SPGF_MAGIC, 0, 'ascii');
  buf.writeUInt32LE(SPGF_VERSION, 4);
  buf.writeBigUInt64LE(BigInt(header.n), 8);
  buf.writeBigUInt64LE(BigInt(header.k), 16);
  buf.writeUInt32LE(header.frameStride, 24);
  buf.writeUInt32LE(header.fpsNum, 28);
  buf.writeUInt32LE(header.fpsDen, 32);
  return buf;
}

/**
 * Write one feature file. `matrix` is row-major with header.n * header.k
 * entries; every row must be finite with a nonzero norm, mirroring what the
 * consumer will enforce on load.
 */
export function writeSpgf(path: string, matrix: Float32Array, header: SpgfHeader): void {
  const packed = packHeader(header);
  if (matrix.length !== header.n * header.k) {
    throw new Error(
      `matrix holds ${matrix.length} values but the header implies ${header.n * header.k}`,
    );
  }
  for (let row = 0; row < header.n; row++) {
    let norm = 0;
    for (let j = 0; j < header.k; j++) {
      const v = matrix[row * header.k + j];
      if (!Number.isFinite(v)) {
        throw new Error(`feature row ${row} contains non-finite entries`);
      }
      norm += v * v;
    }
    if (norm === 0) {
      throw new Error(`feature row ${row} has zero norm`);
    }
  }

  const payload = Buffer.alloc(matrix.length * 4);
  for (let i = 0; i < matrix.length; i++) {
    payload.writeFloatLE(matrix[i], i * 4);
  }
  writeFileSync(path, Buffer.concat([packed, payload]));
}

/** Read a feature file back; used by tests to confirm byte-level round trips. */
export function readSpgf(path: string): { matrix: Float32Array; header: SpgfHeader } {
  const blob = readFileSync(path);
  if (blob.length < HEADER_SIZE) {
    throw new Error(`${path}: truncated header, expected ${HEADER_SIZE} bytes, got ${blob.length}`);
  }
  if (blob.toString('ascii', 0, 4) !== SPGF_MAGIC) {
    throw new Error(`${path}: bad magic`);
  }
  const version = blob.readUInt32LE(4);
  if (version !== SPGF_VERSION) {
    throw new Error(`${path}: unsupported version ${version}, expected ${SPGF_VERSION}`);
  }
  const header: SpgfHeader = {
    n: Number(blob.readBigUInt64LE(8)),
    k: Number(blob.readBigUInt64LE(16)),
    frameStride: blob.readUInt32LE(24),
    fpsNum: blob.readUInt32LE(28),
    fpsDen: blob.readUInt32LE(32),
  };
  const expected = header.n * header.k * 4;
  const actual = blob.length - HEADER_SIZE;
  if (actual !== expected) {
    throw new Error(`${path}: payload holds ${actual} bytes but the header implies ${expected}`);
  }
  const matrix = new Float32Array(header.n * header.k);
  for (let i = 0; i < matrix.length; i++) {
    matrix[i] = blob.readFloatLE(HEADER_SIZE + i * 4);
  }
  return { matrix, header };
}
