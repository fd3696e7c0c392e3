"""Grayscale images: PGM reading/writing, resizing, and graph-signal views.

Pixels are held as float64 in ``[0, 255]`` nominally, but any finite value
is allowed until export.  ``write_pgm`` clamps to ``[0, 255]`` and rounds
half away from zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    DimensionError,
    PGMHeaderError,
    PGMMagicError,
    PGMMaxvalError,
    PGMSampleError,
    PGMTruncatedError,
    PGMUnsupportedError,
)
from .graph import GridSpec

__all__ = [
    "GrayImage",
    "image_to_signal",
    "load_pgm",
    "read_pgm",
    "resize",
    "save_pgm",
    "signal_to_image",
    "write_pgm",
]


@dataclass(frozen=True, eq=False)
class GrayImage:
    pixels: np.ndarray

    def __post_init__(self):
        px = np.array(self.pixels, dtype=np.float64)
        if px.ndim != 2 or px.shape[0] < 1 or px.shape[1] < 1:
            raise ValueError(f"image must be a non-empty 2-D array, got shape {px.shape}")
        if not np.all(np.isfinite(px)):
            raise ValueError("image contains non-finite pixels")
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)

    @property
    def rows(self) -> int:
        return self.pixels.shape[0]

    @property
    def cols(self) -> int:
        return self.pixels.shape[1]

    @property
    def grid(self) -> GridSpec:
        return GridSpec(self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)


_MAGICS = {b"P1": "PBM", b"P2": "PGM", b"P3": "PPM", b"P4": "PBM", b"P5": "PGM",
           b"P6": "PPM", b"P7": "PAM", b"PF": "PFM", b"Pf": "PFM"}
_WS = b" \t\n\v\f\r"


def _header_tokens(data: bytes, count: int, pos: int) -> tuple[list[bytes], int]:
    """Read ``count`` whitespace-separated header tokens, skipping ``#`` comments.

    Returns the tokens and the index just past the last one.
    """
    tokens = []
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos] in _WS:
            pos += 1
        if pos >= n:
            raise PGMHeaderError("header ended early")
        if data[pos] == ord("#"):
            while pos < n and data[pos] not in b"\r\n":
                pos += 1
            continue
        start = pos
        while pos < n and data[pos] not in _WS and data[pos] != ord("#"):
            pos += 1
        tokens.append(data[start:pos])
    return tokens, pos


def _positive_int(token: bytes, name: str) -> int:
    if not re.fullmatch(rb"[0-9]+", token):
        raise PGMHeaderError(f"{name} {token!r} is not a decimal integer")
    value = int(token)
    if value < 1:
        raise PGMHeaderError(f"{name} must be positive, got {value}")
    return value


def read_pgm(data: bytes) -> GrayImage:
    """Parse a P2 (ASCII) or P5 (binary) PGM byte string.

    Samples are rescaled linearly from ``[0, maxval]`` to ``[0, 255]``.
    Raises a distinct :class:`~graphheat.errors.PGMError` subclass for a
    bad magic number, another netpbm format, a malformed header, a maxval
    above 255, a short payload, or a bad sample.
    """
    data = bytes(data)
    magic = data[:2]
    if magic not in _MAGICS:
        raise PGMMagicError(f"not a netpbm file (magic {magic!r})")
    if magic not in (b"P2", b"P5"):
        raise PGMUnsupportedError(f"{_MAGICS[magic]} ({magic.decode()}) is not a grayscale PGM")
    if len(data) > 2 and data[2] not in _WS and data[2] != ord("#"):
        raise PGMMagicError(f"magic number not followed by whitespace: {data[:3]!r}")
    (w_tok, h_tok, m_tok), pos = _header_tokens(data, 3, 2)
    width = _positive_int(w_tok, "width")
    height = _positive_int(h_tok, "height")
    maxval = _positive_int(m_tok, "maxval")
    if maxval > 255:
        raise PGMMaxvalError(f"maxval {maxval} > 255 is not supported")
    count = width * height

    if magic == b"P5":
        if pos >= len(data) or data[pos] not in _WS:
            raise PGMTruncatedError("missing whitespace byte before binary payload")
        payload = data[pos + 1 : pos + 1 + count]
        if len(payload) < count:
            raise PGMTruncatedError(f"expected {count} payload bytes, got {len(payload)}")
        samples = np.frombuffer(payload, dtype=np.uint8).astype(np.int64)
    else:
        body = re.sub(rb"#[^\r\n]*", b" ", data[pos:]).split()
        if len(body) < count:
            raise PGMTruncatedError(f"expected {count} samples, got {len(body)}")
        body = body[:count]
        if not all(tok.isdigit() for tok in body):
            raise PGMSampleError("non-numeric sample in ASCII payload")
        samples = np.array([int(tok) for tok in body], dtype=np.int64)

    if samples.max() > maxval:
        raise PGMSampleError(f"sample {samples.max()} exceeds maxval {maxval}")
    pixels = samples.reshape(height, width).astype(np.float64)
    if maxval != 255:
        pixels = pixels * (255.0 / maxval)
    return GrayImage(pixels)


def _quantize(pixels: np.ndarray, maxval: int) -> np.ndarray:
    clamped = np.clip(pixels, 0.0, 255.0)
    if maxval != 255:
        clamped = clamped * (maxval / 255.0)
    # values are non-negative, so floor(x + 1/2) is round-half-away-from-zero
    return np.floor(clamped + 0.5).astype(np.int64)


def write_pgm(img: GrayImage, mode: str = "binary", maxval: int = 255) -> bytes:
    """Serialise ``img`` as P5 (``mode="binary"``) or P2 (``mode="ascii"``)."""
    if not 1 <= maxval <= 255:
        raise ValueError(f"maxval must lie in [1, 255], got {maxval}")
    q = _quantize(img.pixels, maxval)
    if mode == "binary":
        header = f"P5\n{img.cols} {img.rows}\n{maxval}\n".encode("ascii")
        return header + q.astype(np.uint8).tobytes()
    if mode == "ascii":
        lines = [f"P2\n{img.cols} {img.rows}\n{maxval}"]
        lines.extend(" ".join(map(str, row)) for row in q.tolist())
        return ("\n".join(lines) + "\n").encode("ascii")
    raise ValueError(f"mode must be 'ascii' or 'binary', got {mode!r}")


def load_pgm(path: str | Path) -> GrayImage:
    return read_pgm(Path(path).read_bytes())


def save_pgm(img: GrayImage, path: str | Path, mode: str = "binary") -> None:
    Path(path).write_bytes(write_pgm(img, mode))


def _axis_weights(src: int, dst: int) -> np.ndarray:
    """``dst x src`` resampling matrix for one axis; every row sums to 1.

    Shrinking averages the source cells overlapped by each output cell,
    weighted by overlap length.  Enlarging interpolates linearly between
    source pixel centres, clamped at the borders.
    """
    if dst == src:
        return np.eye(src)
    w = np.zeros((dst, src))
    if dst < src:
        scale = src / dst
        for i in range(dst):
            lo, hi = i * scale, (i + 1) * scale
            for j in range(int(np.floor(lo)), min(int(np.ceil(hi)), src)):
                w[i, j] = min(hi, j + 1) - max(lo, j)
        w /= w.sum(axis=1, keepdims=True)
    else:
        x = (np.arange(dst) + 0.5) * (src / dst) - 0.5
        x = np.clip(x, 0.0, src - 1)
        left = np.floor(x).astype(int)
        right = np.minimum(left + 1, src - 1)
        frac = x - left
        rows = np.arange(dst)
        np.add.at(w, (rows, left), 1.0 - frac)
        np.add.at(w, (rows, right), frac)
    return w


def resize(img: GrayImage, rows: int, cols: int) -> GrayImage:
    """Resample to ``rows x cols``: box filter when shrinking, bilinear when enlarging.

    Each axis is handled independently, so one axis may shrink while the
    other grows.  Same-size calls return an identical image.
    """
    if rows < 1 or cols < 1:
        raise ValueError(f"target size must be positive, got {rows}x{cols}")
    if (rows, cols) == (img.rows, img.cols):
        return GrayImage(img.pixels)
    wr = _axis_weights(img.rows, rows)
    wc = _axis_weights(img.cols, cols)
    return GrayImage(wr @ img.pixels @ wc.T)


def image_to_signal(img: GrayImage) -> np.ndarray:
    """Row-major flattening; pixel ``(r, c)`` becomes vertex ``r * cols + c``."""
    return img.pixels.ravel().copy()


def signal_to_image(signal, spec: GridSpec) -> GrayImage:
    signal = np.asarray(signal, dtype=np.float64)
    if signal.shape != (spec.n,):
        raise DimensionError(f"signal of shape {signal.shape} does not fill a {spec.rows}x{spec.cols} grid")
    return GrayImage(signal.reshape(spec.rows, spec.cols))
