/**
 * Decoded video frame: full-resolution three-channel pixels in [0, 1],
 * interleaved row-major (the layout tf.tensor3d expects).
 */
export interface DecodedFrame {
  width: number;
  height: number;
  /** length = width * height * 3 */
  pixels: Float32Array;
}

/** A sequence of frames plus the source frame rate when the container had one. */
export interface FrameSequence {
  frames: DecodedFrame[];
  fpsNum: number;
  fpsDen: number;
}
