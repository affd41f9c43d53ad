import { mkdirSync, readFileSync, writeFileSync } from 'node:fs';
import { join } from 'node:path';

import { describe, expect, it } from 'vitest';

import { extractFeatures } from '../src/extract';
import { readSpgf } from '../src/spgf';
import { makeP6, makeTempDir, makeY4m, pythonJson } from './helpers';

/** Feature file facts as the Python consumer sees them. */
function inspectWithConsumer(path: string): {
  shape: number[];
  stride: number;
  fps: number[];
  weights: number[];
  frame_of_row_2: number;
} {
  return pythonJson(
    'import json\n' +
      'from keygraph import build_spg\n' +
      'from keygraph.features_io import load_features, to_frame_index\n' +
      `X, h = load_features(${JSON.stringify(path)})\n` +
      'g = build_spg(X)\n' +
      'print(json.dumps({"shape": list(X.shape), "stride": h.frame_stride,\n' +
      '                  "fps": [h.fps_num, h.fps_den],\n' +
      '                  "weights": [float(w) for w in g.weights],\n' +
      '                  "frame_of_row_2": to_frame_index(2, h) if h.n > 2 else -1}))\n',
  );
}

describe('extractFeatures', () => {
  it('gives identical frames unit-weight edges in the consumer graph', () => {
    const dir = makeTempDir('extract-');
    const video = join(dir, 'still.y4m');
    writeFileSync(video, makeY4m([128, 128, 128, 128, 128]));

    const result = extractFeatures(video, { model: 'tiny-16', out: join(dir, 'still.spgf') });
    expect(result.rows).toBe(5);

    const facts = inspectWithConsumer(result.outPath);
    expect(facts.shape).toEqual([5, 16]);
    expect(facts.weights.length).toBe(4);
    for (const w of facts.weights) {
      expect(w).toBeGreaterThanOrEqual(0.99);
    }
  });

  it('is deterministic byte for byte across runs', () => {
    const dir = makeTempDir('extract-');
    const video = join(dir, 'clip.y4m');
    writeFileSync(video, makeY4m([10, 80, 150, 220]));

    extractFeatures(video, { model: 'tiny-16', out: join(dir, 'one.spgf') });
    extractFeatures(video, { model: 'tiny-16', out: join(dir, 'two.spgf') });
    expect(readFileSync(join(dir, 'one.spgf')).equals(readFileSync(join(dir, 'two.spgf')))).toBe(
      true,
    );
  });

  it('subsamples by stride and records the row-to-frame mapping', () => {
    const dir = makeTempDir('extract-');
    const video = join(dir, 'long.y4m');
    const levels = Array.from({ length: 100 }, (_, i) => 20 + 2 * i);
    writeFileSync(video, makeY4m(levels));

    const result = extractFeatures(video, {
      stride: 5,
      model: 'tiny-16',
      out: join(dir, 'long.spgf'),
    });
    expect(result.rows).toBe(20);
    expect(result.stride).toBe(5);

    const facts = inspectWithConsumer(result.outPath);
    expect(facts.shape).toEqual([20, 16]);
    expect(facts.stride).toBe(5);
    expect(facts.fps).toEqual([30, 1]);
    expect(facts.frame_of_row_2).toBe(10);
  });

  it('derives the stride from a target frame rate', () => {
    const dir = makeTempDir('extract-');
    const video = join(dir, 'clip.y4m');
    writeFileSync(video, makeY4m(Array.from({ length: 9 }, (_, i) => 30 + 20 * i), { fps: [30, 1] }));

    const result = extractFeatures(video, {
      targetFps: 10,
      model: 'tiny-16',
      out: join(dir, 'clip.spgf'),
    });
    expect(result.stride).toBe(3);
    expect(result.rows).toBe(3);
  });

  it('covers image directories end to end, where rates are unknown', () => {
    const dir = makeTempDir('extract-');
    const frames = join(dir, 'frames');
    const out = join(dir, 'frames.spgf');
    mkdirSync(frames);
    for (let i = 0; i < 4; i++) {
      writeFileSync(join(frames, `f${i}.ppm`), makeP6(4, 4, [60 * i, 10, 200 - 40 * i]));
    }

    const result = extractFeatures(frames, { model: 'tiny-16', out });
    expect(result.rows).toBe(4);
    expect(result.fpsNum).toBe(0);
    expect(result.fpsDen).toBe(0);
    expect(readSpgf(out).header.fpsNum).toBe(0);

    expect(() => extractFeatures(frames, { targetFps: 10, model: 'tiny-16', out })).toThrow(
      'declares no frame rate',
    );
  });

  it('rejects contradictory or malformed sampling options', () => {
    const dir = makeTempDir('extract-');
    const video = join(dir, 'clip.y4m');
    writeFileSync(video, makeY4m([128]));
    const out = join(dir, 'x.spgf');

    expect(() => extractFeatures(video, { stride: 2, targetFps: 5, out })).toThrow('not both');
    expect(() => extractFeatures(video, { stride: 0, out })).toThrow(
      'stride must be a positive integer, got 0',
    );
    expect(() => extractFeatures(video, { targetFps: -1, out })).toThrow(
      'target frame rate must be positive, got -1',
    );
    expect(() => extractFeatures(video, { model: 'huge-512', out })).toThrow(
      'model huge-512 is unavailable',
    );
  });

  it('honors each built-in model width', () => {
    const dir = makeTempDir('extract-');
    const video = join(dir, 'clip.y4m');
    writeFileSync(video, makeY4m([64, 192]));

    const wide = extractFeatures(video, { out: join(dir, 'wide.spgf') });
    expect(wide.width).toBe(64);
    expect(readSpgf(wide.outPath).header.k).toBe(64);

    const narrow = extractFeatures(video, { model: 'tiny-16', out: join(dir, 'narrow.spgf') });
    expect(narrow.width).toBe(16);
    expect(readSpgf(narrow.outPath).header.k).toBe(16);
  });
});
