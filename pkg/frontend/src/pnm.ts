/**
 * Decoders for binary PPM (P6) and PGM (P5) images, the portable formats
 * an image-sequence directory is expected to hold. 8-bit samples only;
 * grayscale images are replicated across the three output channels.
 */
import { DecodedFrame } from './frame';

/** Read one whitespace-delimited header token, skipping '#' comments. */
function nextToken(buf: Buffer, offset: number): { token: string; next: number } {
  let i = offset;
  for (;;) {
    while (i < buf.length && isSpace(buf[i])) i++;
    if (i < buf.length && buf[i] === 0x23) {
      while (i < buf.length && buf[i] !== 0x0a) i++;
      continue;
    }
    break;
  }
  const start = i;
  while (i < buf.length && !isSpace(buf[i])) i++;
  if (start === i) {
    throw new Error('truncated header');
  }
  return { token: buf.toString('ascii', start, i), next: i };
}

function isSpace(byte: number): boolean {
  return byte === 0x20 || byte === 0x09 || byte === 0x0a || byte === 0x0d;
}

function headerInt(buf: Buffer, offset: number, what: string): { value: number; next: number } {
  const { token, next } = nextToken(buf, offset);
  const value = parseInt(token, 10);
  if (!Number.isInteger(value) || String(value) !== token) {
    throw new Error(`${what} must be a decimal integer, got ${JSON.stringify(token)}`);
  }
  return { value, next };
}

/** Decode a binary PPM or PGM buffer into a three-channel frame. */
export function parsePnm(buf: Buffer): DecodedFrame {
  const magic = nextToken(buf, 0);
  if (magic.token !== 'P6' && magic.token !== 'P5') {
    throw new Error(`unsupported format ${JSON.stringify(magic.token)}, expected P6 or P5`);
  }
  const gray = magic.token === 'P5';
  const w = headerInt(buf, magic.next, 'width');
  const h = headerInt(buf, w.next, 'height');
  const maxval = headerInt(buf, h.next, 'maxval');
  if (w.value < 1 || h.value < 1) {
    throw new Error(`image size ${w.value}x${h.value} is empty`);
  }
  if (maxval.value < 1 || maxval.value > 255) {
    throw new Error(`only 8-bit samples are supported, got maxval ${maxval.value}`);
  }
  // exactly one whitespace byte separates the header from the samples
  const dataStart = maxval.next + 1;
  const width = w.value;
  const height = h.value;
  const samples = width * height * (gray ? 1 : 3);
  if (buf.length - dataStart < samples) {
    throw new Error(
      `pixel data holds ${buf.length - dataStart} bytes but the header implies ${samples}`,
    );
  }

  const pixels = new Float32Array(width * height * 3);
  for (let p = 0; p < width * height; p++) {
    if (gray) {
      const v = buf[dataStart + p] / maxval.value;
      pixels[p * 3] = v;
      pixels[p * 3 + 1] = v;
      pixels[p * 3 + 2] = v;
    } else {
      pixels[p * 3] = buf[dataStart + p * 3] / maxval.value;
      pixels[p * 3 + 1] = buf[dataStart + p * 3 + 1] / maxval.value;
      pixels[p * 3 + 2] = buf[dataStart + p * 3 + 2] / maxval.value;
    }
  }
  return { width, height, pixels };
}
