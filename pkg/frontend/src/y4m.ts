/**
 * Parser for uncompressed YUV4MPEG2 (.y4m) video files.
 *
 * Handles the planar 4:2:0 family, 4:2:2, 4:4:4 and mono. The decoder does
 * not convert colorspaces: each output frame carries the Y, U and V planes
 * as three channels scaled to [0, 1], chroma upsampled nearest-neighbor to
 * the luma grid (Y replicated for mono). Feature embeddings only need a
 * stable, deterministic pixel mapping, which this provides.
 */
import { DecodedFrame, FrameSequence } from './frame';

interface PlaneLayout {
  chromaWidth: (w: number) => number;
  chromaHeight: (h: number) => number;
  mono: boolean;
}

const COLORSPACES: Record<string, PlaneLayout> = {
  '420': { chromaWidth: w => w >> 1, chromaHeight: h => h >> 1, mono: false },
  '420jpeg': { chromaWidth: w => w >> 1, chromaHeight: h => h >> 1, mono: false },
  '420mpeg2': { chromaWidth: w => w >> 1, chromaHeight: h => h >> 1, mono: false },
  '420paldv': { chromaWidth: w => w >> 1, chromaHeight: h => h >> 1, mono: false },
  '422': { chromaWidth: w => w >> 1, chromaHeight: h => h, mono: false },
  '444': { chromaWidth: w => w, chromaHeight: h => h, mono: false },
  mono: { chromaWidth: () => 0, chromaHeight: () => 0, mono: true },
};

function readLine(buf: Buffer, offset: number): { line: string; next: number } {
  const end = buf.indexOf(0x0a, offset);
  if (end === -1) {
    throw new Error('unterminated header line');
  }
  return { line: buf.toString('ascii', offset, end), next: end + 1 };
}

/** Parse a complete .y4m buffer into frames plus the declared frame rate. */
export function parseY4m(buf: Buffer): FrameSequence {
  const { line, next } = readLine(buf, 0);
  const tokens = line.split(' ');
  if (tokens[0] !== 'YUV4MPEG2') {
    throw new Error(`not a YUV4MPEG2 stream (got ${JSON.stringify(tokens[0])})`);
  }

  let width = 0;
  let height = 0;
  let fpsNum = 0;
  let fpsDen = 0;
  let colorspace = '420jpeg';
  for (const token of tokens.slice(1)) {
    const tag = token[0];
    const value = token.slice(1);
    if (tag === 'W') width = parseInt(value, 10);
    else if (tag === 'H') height = parseInt(value, 10);
    else if (tag === 'F') {
      const [num, den] = value.split(':');
      fpsNum = parseInt(num, 10);
      fpsDen = parseInt(den, 10);
    } else if (tag === 'C') colorspace = value;
    // I (interlace), A (aspect) and X (extensions) do not affect decoding
  }
  if (!(width > 0) || !(height > 0)) {
    throw new Error(`stream declares no frame size (W${width} H${height})`);
  }
  const layout = COLORSPACES[colorspace];
  if (layout === undefined) {
    throw new Error(`unsupported colorspace C${colorspace}`);
  }
  const cw = layout.chromaWidth(width);
  const ch = layout.chromaHeight(height);
  const frameBytes = width * height + 2 * cw * ch;

  const frames: DecodedFrame[] = [];
  let offset = next;
  while (offset < buf.length) {
    const marker = readLine(buf, offset);
    if (!marker.line.startsWith('FRAME')) {
      throw new Error(`expected FRAME marker at byte ${offset}`);
    }
    offset = marker.next;
    if (offset + frameBytes > buf.length) {
      throw new Error(
        `truncated frame ${frames.length}: needs ${frameBytes} bytes, ${buf.length - offset} left`,
      );
    }
    frames.push(decodeFrame(buf, offset, width, height, cw, ch, layout.mono));
    offset += frameBytes;
  }
  return { frames, fpsNum, fpsDen };
}

function decodeFrame(
  buf: Buffer,
  offset: number,
  width: number,
  height: number,
  cw: number,
  ch: number,
  mono: boolean,
): DecodedFrame {
  const pixels = new Float32Array(width * height * 3);
  const uStart = offset + width * height;
  const vStart = uStart + cw * ch;
  for (let y = 0; y < height; y++) {
    for (let x = 0; x < width; x++) {
      const luma = buf[offset + y * width + x] / 255;
      const out = (y * width + x) * 3;
      if (mono) {
        pixels[out] = luma;
        pixels[out + 1] = luma;
        pixels[out + 2] = luma;
      } else {
        const cx = Math.min((x * cw / width) | 0, cw - 1);
        const cy = Math.min((y * ch / height) | 0, ch - 1);
        pixels[out] = luma;
        pixels[out + 1] = buf[uStart + cy * cw + cx] / 255;
        pixels[out + 2] = buf[vStart + cy * cw + cx] / 255;
      }
    }
  }
  return { width, height, pixels };
}
