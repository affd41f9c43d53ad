"""Tests for the feature-file format and frame-index mapping."""

import struct

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from keygraph.features_io import (
    MAGIC,
    VERSION,
    FeatureFileHeader,
    load_features,
    save_features,
    to_frame_index,
)

HEADER_SIZE = 36


def test_binary_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    X = rng.normal(size=(7, 5)).astype("<f4").astype(float)
    header = FeatureFileHeader(7, 5, frame_stride=5, fps_num=30, fps_den=1)
    path = tmp_path / "clip.spgf"
    save_features(X, header, path)
    loaded, loaded_header = load_features(path)
    np.testing.assert_array_equal(loaded, X)
    assert loaded_header == header


def test_resave_is_byte_identical(tmp_path):
    rng = np.random.default_rng(1)
    X = rng.normal(size=(4, 3))
    header = FeatureFileHeader(4, 3, frame_stride=2)
    first = tmp_path / "a.spgf"
    second = tmp_path / "b.spgf"
    save_features(X, header, first)
    loaded, loaded_header = load_features(first)
    save_features(loaded, loaded_header, second)
    assert first.read_bytes() == second.read_bytes()


def test_header_layout_is_fixed(tmp_path):
    X = np.arange(1.0, 7.0).reshape(2, 3)
    path = tmp_path / "x.spgf"
    save_features(X, FeatureFileHeader(2, 3, frame_stride=4, fps_num=24, fps_den=1), path)
    blob = path.read_bytes()
    assert blob[0:4] == MAGIC
    magic, version, n, k, stride, fps_num, fps_den = struct.unpack_from("<4sIQQIII", blob)
    assert (version, n, k, stride, fps_num, fps_den) == (VERSION, 2, 3, 4, 24, 1)
    assert len(blob) == HEADER_SIZE + 2 * 3 * 4
    payload = np.frombuffer(blob, dtype="<f4", offset=HEADER_SIZE)
    np.testing.assert_array_equal(payload.reshape(2, 3), X.astype("<f4"))


def test_truncated_payload_names_byte_counts(tmp_path):
    path = tmp_path / "short.spgf"
    header = FeatureFileHeader(2, 3)
    payload = np.ones((2, 3), dtype="<f4").tobytes()
    path.write_bytes(header.pack() + payload[:-4])
    with pytest.raises(ValueError, match="20 bytes.*24"):
        load_features(path)


def test_truncated_header_is_rejected(tmp_path):
    path = tmp_path / "stub.spgf"
    path.write_bytes(b"SPGF\x01")
    with pytest.raises(ValueError, match="truncated header"):
        load_features(path)


def test_bad_magic_is_rejected(tmp_path):
    path = tmp_path / "bad.spgf"
    header = bytearray(FeatureFileHeader(1, 1).pack())
    header[0:4] = b"NOPE"
    path.write_bytes(bytes(header) + np.ones((1, 1), dtype="<f4").tobytes())
    with pytest.raises(ValueError, match="bad magic"):
        load_features(path)


def test_unsupported_version_is_rejected(tmp_path):
    path = tmp_path / "v9.spgf"
    blob = struct.pack("<4sIQQIII", MAGIC, 9, 1, 1, 1, 0, 0)
    path.write_bytes(blob + np.ones((1, 1), dtype="<f4").tobytes())
    with pytest.raises(ValueError, match="version 9"):
        load_features(path)


def test_zero_norm_row_is_named_on_load(tmp_path):
    path = tmp_path / "zero.spgf"
    X = np.array([[1.0, 2.0], [0.0, 0.0]], dtype="<f4")
    path.write_bytes(FeatureFileHeader(2, 2).pack() + X.tobytes())
    with pytest.raises(ValueError, match="row 1.*zero norm"):
        load_features(path)


def test_nonfinite_row_is_named_on_load(tmp_path):
    path = tmp_path / "inf.spgf"
    X = np.array([[1.0, np.inf], [1.0, 1.0]], dtype="<f4")
    path.write_bytes(FeatureFileHeader(2, 2).pack() + X.tobytes())
    with pytest.raises(ValueError, match="row 0"):
        load_features(path)


def test_csv_round_trip(tmp_path):
    rng = np.random.default_rng(2)
    X = rng.normal(size=(5, 4))
    path = tmp_path / "clip.csv"
    save_features(X, FeatureFileHeader(5, 4), path)
    loaded, header = load_features(path)
    np.testing.assert_array_equal(loaded, X)
    assert header.frame_stride == 1
    assert (header.fps_num, header.fps_den) == (0, 0)


def test_csv_cannot_carry_metadata(tmp_path):
    X = np.ones((2, 2))
    with pytest.raises(ValueError, match="stride or fps"):
        save_features(X, FeatureFileHeader(2, 2, frame_stride=3), tmp_path / "x.csv")


def test_csv_comments_are_skipped(tmp_path):
    path = tmp_path / "c.csv"
    path.write_text("# frame features\n1.0,2.0\n# middle note\n3.0,4.0\n")
    X, header = load_features(path)
    np.testing.assert_array_equal(X, [[1.0, 2.0], [3.0, 4.0]])
    assert header.n == 2


def test_malformed_csv_is_a_data_error(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("1.0,oops\n")
    with pytest.raises(ValueError, match="malformed CSV"):
        load_features(path)


def test_csv_zero_row_is_rejected(tmp_path):
    path = tmp_path / "z.csv"
    path.write_text("1.0,1.0\n0.0,0.0\n")
    with pytest.raises(ValueError, match="row 1"):
        load_features(path)


def test_save_rejects_shape_mismatch(tmp_path):
    with pytest.raises(ValueError, match="disagrees with header"):
        save_features(np.ones((2, 2)), FeatureFileHeader(3, 2), tmp_path / "x.spgf")


def test_header_validation():
    with pytest.raises(ValueError, match="n >= 1"):
        FeatureFileHeader(0, 3)
    with pytest.raises(ValueError, match="frame_stride"):
        FeatureFileHeader(1, 1, frame_stride=0)
    with pytest.raises(ValueError, match="nonnegative"):
        FeatureFileHeader(1, 1, fps_num=-1)
    with pytest.raises(ValueError, match="integer"):
        FeatureFileHeader(1.5, 1)
    with pytest.raises(ValueError, match="32 bits"):
        FeatureFileHeader(1, 1, frame_stride=2**32)


def test_to_frame_index_mapping():
    header = FeatureFileHeader(4, 2, frame_stride=5)
    assert to_frame_index(0, header) == 0
    assert to_frame_index(2, header) == 10
    assert to_frame_index(3, FeatureFileHeader(4, 2)) == 3


def test_to_frame_index_validation():
    header = FeatureFileHeader(4, 2, frame_stride=5)
    with pytest.raises(ValueError, match="outside"):
        to_frame_index(4, header)
    with pytest.raises(ValueError, match="outside"):
        to_frame_index(-1, header)
    with pytest.raises(ValueError, match="integer"):
        to_frame_index(1.0, header)


@settings(max_examples=60, deadline=None)
@given(
    X=arrays(
        np.float32,
        st.tuples(st.integers(1, 6), st.integers(1, 4)),
        elements=st.floats(
            min_value=0.5, max_value=1e4, allow_nan=False, width=32
        ),
    ),
    stride=st.integers(min_value=1, max_value=1000),
)
def test_round_trip_property(X, stride, tmp_path_factory):
    path = tmp_path_factory.mktemp("rt") / "f.spgf"
    n, k = X.shape
    header = FeatureFileHeader(n, k, frame_stride=stride)
    save_features(X.astype(float), header, path)
    loaded, loaded_header = load_features(path)
    np.testing.assert_array_equal(loaded, X.astype(float))
    assert loaded_header.frame_stride == stride
