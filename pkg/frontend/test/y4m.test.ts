import { describe, expect, it } from 'vitest';

import { parseY4m } from '../src/y4m';
import { makeY4m } from './helpers';

function channel(pixels: Float32Array, width: number, x: number, y: number, c: number): number {
  return pixels[(y * width + x) * 3 + c];
}

describe('parseY4m', () => {
  it('decodes a 4:2:0 stream with frame count, size and rate', () => {
    const seq = parseY4m(makeY4m([40, 200], { width: 8, height: 8, fps: [30, 1] }));
    expect(seq.frames.length).toBe(2);
    expect(seq.fpsNum).toBe(30);
    expect(seq.fpsDen).toBe(1);
    const frame = seq.frames[0];
    expect(frame.width).toBe(8);
    expect(frame.height).toBe(8);
    expect(frame.pixels.length).toBe(8 * 8 * 3);
    expect(channel(frame.pixels, 8, 3, 5, 0)).toBeCloseTo(40 / 255, 6);
    expect(channel(frame.pixels, 8, 3, 5, 1)).toBeCloseTo(128 / 255, 6);
    expect(channel(seq.frames[1].pixels, 8, 0, 0, 0)).toBeCloseTo(200 / 255, 6);
  });

  it('upsamples 4:2:0 chroma nearest neighbor onto the luma grid', () => {
    const header = Buffer.from('YUV4MPEG2 W4 H2 F25:1 C420jpeg\n', 'ascii');
    const luma = Buffer.from([0, 1, 2, 3, 4, 5, 6, 7]);
    const u = Buffer.from([10, 250]);
    const v = Buffer.from([60, 70]);
    const seq = parseY4m(Buffer.concat([header, Buffer.from('FRAME\n'), luma, u, v]));

    const { pixels } = seq.frames[0];
    for (let y = 0; y < 2; y++) {
      for (let x = 0; x < 4; x++) {
        expect(channel(pixels, 4, x, y, 0)).toBeCloseTo((y * 4 + x) / 255, 6);
        expect(channel(pixels, 4, x, y, 1)).toBeCloseTo((x < 2 ? 10 : 250) / 255, 6);
        expect(channel(pixels, 4, x, y, 2)).toBeCloseTo((x < 2 ? 60 : 70) / 255, 6);
      }
    }
  });

  it('keeps per-pixel chroma for 4:4:4', () => {
    const header = Buffer.from('YUV4MPEG2 W2 H1 F25:1 C444\n', 'ascii');
    const planes = Buffer.from([100, 200, 1, 2, 3, 4]);
    const { pixels } = parseY4m(Buffer.concat([header, Buffer.from('FRAME\n'), planes])).frames[0];
    expect(channel(pixels, 2, 0, 0, 1)).toBeCloseTo(1 / 255, 6);
    expect(channel(pixels, 2, 1, 0, 1)).toBeCloseTo(2 / 255, 6);
    expect(channel(pixels, 2, 0, 0, 2)).toBeCloseTo(3 / 255, 6);
    expect(channel(pixels, 2, 1, 0, 2)).toBeCloseTo(4 / 255, 6);
  });

  it('shares columns for 4:2:2 and replicates luma for mono', () => {
    const seq422 = parseY4m(makeY4m([90], { width: 2, height: 2, colorspace: '422' }));
    expect(seq422.frames[0].pixels.length).toBe(2 * 2 * 3);
    expect(channel(seq422.frames[0].pixels, 2, 1, 1, 1)).toBeCloseTo(128 / 255, 6);

    const mono = parseY4m(makeY4m([90], { width: 2, height: 2, colorspace: 'mono' })).frames[0];
    expect(channel(mono.pixels, 2, 1, 0, 0)).toBeCloseTo(90 / 255, 6);
    expect(channel(mono.pixels, 2, 1, 0, 1)).toBeCloseTo(90 / 255, 6);
    expect(channel(mono.pixels, 2, 1, 0, 2)).toBeCloseTo(90 / 255, 6);
  });

  it('assumes 4:2:0 when the header declares no colorspace', () => {
    const header = Buffer.from('YUV4MPEG2 W2 H2 F25:1\n', 'ascii');
    const frame = Buffer.concat([Buffer.from('FRAME\n'), Buffer.from([9, 9, 9, 9, 128, 128])]);
    const seq = parseY4m(Buffer.concat([header, frame]));
    expect(seq.frames.length).toBe(1);
  });

  it('parses a rational frame rate', () => {
    const seq = parseY4m(makeY4m([128], { fps: [30000, 1001] }));
    expect(seq.fpsNum).toBe(30000);
    expect(seq.fpsDen).toBe(1001);
  });

  it('rejects malformed streams with specific messages', () => {
    expect(() => parseY4m(Buffer.from('MPEG W2 H2\nFRAME\n'))).toThrow('not a YUV4MPEG2 stream');
    expect(() => parseY4m(Buffer.from('YUV4MPEG2 F25:1\n'))).toThrow('declares no frame size');
    expect(() => parseY4m(Buffer.from('YUV4MPEG2 W2 H2 C411\n'))).toThrow(
      'unsupported colorspace C411',
    );
    expect(() => parseY4m(Buffer.from('YUV4MPEG2 W2 H2'))).toThrow('unterminated header line');

    const good = makeY4m([50], { width: 2, height: 2 });
    expect(() => parseY4m(Buffer.concat([good, Buffer.from('JUNK\n')]))).toThrow(
      `expected FRAME marker at byte ${good.length}`,
    );
    expect(() => parseY4m(good.subarray(0, good.length - 3))).toThrow(
      'truncated frame 0: needs 6 bytes, 3 left',
    );
  });
});
