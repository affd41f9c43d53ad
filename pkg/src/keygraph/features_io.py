"""Durable storage for frame feature matrices.

The binary format is deliberately tiny: a 36-byte little-endian header
followed by the matrix as row-major 32-bit floats.

    bytes 0..3    magic "SPGF"
    bytes 4..7    format version, u32, currently 1
    bytes 8..15   N, row count, u64
    bytes 16..23  K, feature dimension, u64
    bytes 24..27  frame_stride, u32: original-frame distance between rows
    bytes 28..31  fps numerator, u32 (0 if unknown)
    bytes 32..35  fps denominator, u32 (0 if unknown)

The stride travels with the data so sampled row indices can always be mapped
back to original video frame numbers, no matter how the extractor subsampled.
Files with a ``.csv`` extension load through a text fallback instead: UTF-8,
comma-separated, one frame per row, '#' starting comment lines, stride 1.
"""

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .graph import validate_features

__all__ = [
    "FeatureFileHeader",
    "MAGIC",
    "VERSION",
    "load_features",
    "save_features",
    "to_frame_index",
]

MAGIC = b"SPGF"
VERSION = 1
_HEADER = struct.Struct("<4sIQQIII")


@dataclass(frozen=True)
class FeatureFileHeader:
    """Validated header of a feature file."""

    n: int
    k: int
    frame_stride: int = 1
    fps_num: int = 0
    fps_den: int = 0

    def __post_init__(self) -> None:
        for name in ("n", "k", "frame_stride", "fps_num", "fps_den"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise ValueError(f"header field {name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.n < 1 or self.k < 1:
            raise ValueError(f"header needs n >= 1 and k >= 1, got n={self.n}, k={self.k}")
        if self.frame_stride < 1:
            raise ValueError(f"frame_stride must be >= 1, got {self.frame_stride}")
        if self.fps_num < 0 or self.fps_den < 0:
            raise ValueError("fps fields must be nonnegative")
        if self.n >= 2**64 or self.k >= 2**64:
            raise ValueError("n and k must fit in 64 bits")
        for name in ("frame_stride", "fps_num", "fps_den"):
            if getattr(self, name) >= 2**32:
                raise ValueError(f"header field {name} must fit in 32 bits")

    def pack(self) -> bytes:
        return _HEADER.pack(
            MAGIC, VERSION, self.n, self.k, self.frame_stride, self.fps_num, self.fps_den
        )


def save_features(features, header: FeatureFileHeader, path) -> None:
    """Write a feature matrix and its header; payload is float32 row-major.

    A ``.csv`` destination is written as text instead (17 significant digits,
    so float64 values survive the trip); CSV carries no header, so stride and
    fps must be at their defaults.
    """
    X = validate_features(features)
    if X.shape != (header.n, header.k):
        raise ValueError(
            f"matrix shape {X.shape} disagrees with header ({header.n}, {header.k})"
        )
    path = Path(path)
    if path.suffix.lower() == ".csv":
        if header.frame_stride != 1 or header.fps_num or header.fps_den:
            raise ValueError("CSV files cannot carry stride or fps metadata")
        np.savetxt(path, X, delimiter=",", fmt="%.17g")
        return
    payload = np.ascontiguousarray(X, dtype="<f4").tobytes()
    path.write_bytes(header.pack() + payload)


def load_features(path) -> tuple[np.ndarray, FeatureFileHeader]:
    """Read and validate a feature file.

    Returns the matrix as float64 together with the header.  CSV files get a
    synthetic header with stride 1 and unknown fps.  Raises ValueError for a
    bad magic or version, a payload whose length disagrees with the header,
    and any row that breaks the feature-matrix invariants.
    """
    path = Path(path)
    if path.suffix.lower() == ".csv":
        try:
            X = np.loadtxt(path, delimiter=",", comments="#", ndmin=2, dtype=float)
        except ValueError as exc:
            raise ValueError(f"{path}: malformed CSV: {exc}") from exc
        X = validate_features(X)
        return X, FeatureFileHeader(X.shape[0], X.shape[1])

    blob = path.read_bytes()
    if len(blob) < _HEADER.size:
        raise ValueError(
            f"{path}: truncated header, expected {_HEADER.size} bytes, got {len(blob)}"
        )
    magic, version, n, k, stride, fps_num, fps_den = _HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise ValueError(f"{path}: bad magic {magic!r}, expected {MAGIC!r}")
    if version != VERSION:
        raise ValueError(f"{path}: unsupported version {version}, expected {VERSION}")
    header = FeatureFileHeader(n, k, stride, fps_num, fps_den)
    expected = n * k * 4
    actual = len(blob) - _HEADER.size
    if actual != expected:
        raise ValueError(
            f"{path}: payload holds {actual} bytes but the header implies {expected}"
        )
    X = np.frombuffer(blob, dtype="<f4", offset=_HEADER.size).reshape(n, k)
    return validate_features(X), header


def to_frame_index(sample_row: int, header: FeatureFileHeader) -> int:
    """Original video frame number of a feature row (both 0-based)."""
    if isinstance(sample_row, bool) or not isinstance(sample_row, (int, np.integer)):
        raise ValueError(f"sample row must be an integer, got {sample_row!r}")
    if not 0 <= sample_row < header.n:
        raise ValueError(f"sample row {sample_row} outside 0..{header.n - 1}")
    return int(sample_row) * header.frame_stride
