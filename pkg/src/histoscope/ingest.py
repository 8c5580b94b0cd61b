"""Decoding of image files and CSV tables into grayscale pixel records.

Accepted inputs are PNG, JPEG (baseline + progressive), GIF, BMP, baseline
TIFF, and CSV tables of integers.  Everything becomes an :class:`ImageRecord`:
a rectangular grid of 8-bit or 16-bit intensities.

Depth rules enforced here:

* 8-bit grayscale and 16-bit grayscale pass through unchanged;
* 8-bit color collapses to grayscale via the BT.601 luma weights
  (:func:`rgb_to_gray`), palette images expanding to RGB first and alpha
  channels being discarded;
* 16-bit images with more than one channel are rejected with instructions
  to convert to grayscale externally;
* any other sample depth (1/2/4-bit grayscale, floats, ...) is rejected.
"""

from __future__ import annotations

import csv
import io
import warnings
from dataclasses import dataclass

import numpy as np
from PIL import Image, UnidentifiedImageError

from . import formats
from .errors import (
    CorruptFileError,
    EmptyTableError,
    HistoscopeError,
    NonIntegerValueError,
    OutOfDomainError,
    RaggedRowsError,
    SixteenBitColorError,
    UnsupportedDepthError,
)

# Integer BT.601 luma weights in thousandths: 0.299 R + 0.587 G + 0.114 B.
GRAY_WEIGHTS = (299, 587, 114)

# Side length beyond which ingestion warns (but proceeds): statistics stay
# fast, but interactive rendering of much larger images degrades.
RECOMMENDED_MAX_SIDE = 1024


class LargeImageWarning(UserWarning):
    """Image exceeds the recommended maximum side length."""


@dataclass(frozen=True, eq=False)
class ImageRecord:
    """A decoded grayscale image: immutable pixel grid plus provenance.

    ``pixels`` is a read-only ``(height, width)`` array of ``uint8`` or
    ``uint16``, so every value is within ``[0, 2**bit_depth - 1]`` by
    construction.
    """

    source_name: str
    width: int
    height: int
    bit_depth: int
    pixels: np.ndarray

    def __post_init__(self):
        if self.bit_depth not in (8, 16):
            raise ValueError(f"bit_depth must be 8 or 16, got {self.bit_depth}")
        expected = np.uint8 if self.bit_depth == 8 else np.uint16
        if self.pixels.dtype != expected:
            raise ValueError(f"{self.bit_depth}-bit record requires {expected} pixels")
        if self.pixels.shape != (self.height, self.width):
            raise ValueError("pixel buffer shape does not match width x height")
        if self.width < 1 or self.height < 1:
            raise ValueError("image must contain at least one pixel")
        self.pixels.flags.writeable = False

    @property
    def total_pixels(self) -> int:
        return self.width * self.height

    @property
    def max_intensity(self) -> int:
        """Top of the intensity domain (255 or 65535)."""
        return (1 << self.bit_depth) - 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, ImageRecord):
            return NotImplemented
        return (
            self.source_name == other.source_name
            and self.bit_depth == other.bit_depth
            and self.pixels.shape == other.pixels.shape
            and bool(np.array_equal(self.pixels, other.pixels))
        )


def rgb_to_gray(r: int, g: int, b: int) -> int:
    """Collapse one 8-bit RGB triple to a single intensity.

    Computes round-half-up(0.299 r + 0.587 g + 0.114 b) exactly, using
    integer arithmetic in thousandths so no float rounding can leak in.
    """
    wr, wg, wb = GRAY_WEIGHTS
    return min(255, (wr * r + wg * g + wb * b + 500) // 1000)


def _gray_plane(rgb: np.ndarray) -> np.ndarray:
    """Vectorized :func:`rgb_to_gray` over an (h, w, 3) uint8 array."""
    wr, wg, wb = GRAY_WEIGHTS
    acc = rgb.astype(np.uint32)
    gray = (wr * acc[..., 0] + wg * acc[..., 1] + wb * acc[..., 2] + 500) // 1000
    return gray.astype(np.uint8)


def decode_image(file_bytes: bytes, name: str) -> ImageRecord:
    """Decode a supported image file into a grayscale :class:`ImageRecord`.

    The stored sample layout is probed from the container header before
    Pillow decodes anything, because Pillow silently narrows 16-bit color
    data to 8 bits.  Multi-frame GIFs contribute only their first frame.
    """
    try:
        info = formats.probe(file_bytes)
    except HistoscopeError as exc:
        raise type(exc)(f"{name}: {exc.message}") from None

    if info.format == "tiff" and info.float_or_signed:
        raise UnsupportedDepthError(
            f"{name}: TIFF samples are float or signed; only unsigned "
            "8-bit and 16-bit intensities are supported"
        )
    if not info.palette:
        if info.bits_per_sample == 16 and info.channels > 1:
            raise SixteenBitColorError(
                f"{name}: 16-bit images must be single-channel grayscale. "
                "Convert the file to grayscale with an external tool "
                "(e.g. GIMP: Image > Mode > Grayscale) and reopen it."
            )
        if info.bits_per_sample not in (8, 16):
            raise UnsupportedDepthError(
                f"{name}: {info.bits_per_sample}-bit samples are not supported; "
                "only 8-bit and 16-bit depths are accepted"
            )

    try:
        img = Image.open(io.BytesIO(file_bytes))
        img.load()
    except UnidentifiedImageError as exc:
        raise CorruptFileError(f"{name}: file could not be decoded") from exc
    except OSError as exc:
        raise CorruptFileError(f"{name}: truncated or corrupt file ({exc})") from exc

    if img.mode in ("I;16", "I;16L", "I;16B", "I;16N", "I"):
        arr = np.asarray(img)
        if arr.dtype != np.uint16:
            # 32-bit container for 16-bit data (older Pillow PNG path)
            if arr.min() < 0 or arr.max() > 0xFFFF:
                raise UnsupportedDepthError(
                    f"{name}: integer samples exceed the 16-bit domain"
                )
            arr = arr.astype(np.uint16)
        record = _make_record(name, 16, arr)
    elif img.mode == "L":
        record = _make_record(name, 8, np.asarray(img, dtype=np.uint8))
    else:
        # Palette, RGB(A), LA, CMYK, ... -- expand to RGB and apply the
        # luma weights.  Gray pixels map to themselves exactly.
        rgb = np.asarray(img.convert("RGB"), dtype=np.uint8)
        record = _make_record(name, 8, _gray_plane(rgb))

    return record


def _make_record(name: str, depth: int, arr: np.ndarray) -> ImageRecord:
    arr = np.ascontiguousarray(arr)
    h, w = arr.shape
    if max(w, h) > RECOMMENDED_MAX_SIDE:
        warnings.warn(
            f"{name}: {w}x{h} exceeds the recommended "
            f"{RECOMMENDED_MAX_SIDE}x{RECOMMENDED_MAX_SIDE}; interactive "
            "display may be slow",
            LargeImageWarning,
            stacklevel=3,
        )
    return ImageRecord(name, w, h, depth, arr)


def ingest_csv(file_bytes: bytes, name: str, declared_depth: int = 8) -> ImageRecord:
    """Read a 1D or 2D comma-separated table of integers as an image.

    CSV carries no depth metadata, so the caller declares 8 or 16; every
    value must be an integer inside that depth's domain.
    """
    if declared_depth not in (8, 16):
        raise ValueError(f"declared_depth must be 8 or 16, got {declared_depth}")
    try:
        text = file_bytes.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise CorruptFileError(f"{name}: CSV is not valid UTF-8") from exc

    rows = [row for row in csv.reader(io.StringIO(text)) if any(f.strip() for f in row)]
    if not rows:
        raise EmptyTableError(f"{name}: CSV contains no values")

    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise RaggedRowsError(
                f"{name}: row {i + 1} has {len(row)} values, expected {width}"
            )

    limit = (1 << declared_depth) - 1
    values = np.empty((len(rows), width), dtype=np.int64)
    for i, row in enumerate(rows):
        for j, token in enumerate(row):
            values[i, j] = _parse_cell(token, name, i, j)
    if values.min() < 0 or values.max() > limit:
        bad = values.min() if values.min() < 0 else values.max()
        raise OutOfDomainError(
            f"{name}: value {bad} outside the {declared_depth}-bit domain [0, {limit}]"
        )

    dtype = np.uint8 if declared_depth == 8 else np.uint16
    return ImageRecord(name, width, len(rows), declared_depth, values.astype(dtype))


def _parse_cell(token: str, name: str, i: int, j: int) -> int:
    text = token.strip()
    try:
        return int(text)
    except ValueError:
        pass
    try:
        value = float(text)
    except ValueError:
        raise NonIntegerValueError(
            f"{name}: cell ({i + 1},{j + 1}) is not a number: {text!r}"
        ) from None
    if not value.is_integer():
        raise NonIntegerValueError(
            f"{name}: cell ({i + 1},{j + 1}) is not an integer: {text!r}"
        )
    return int(value)


def decode_any(file_bytes: bytes, name: str, csv_depth: int = 8) -> ImageRecord:
    """Dispatch on file name: ``.csv`` goes through the table reader,
    everything else through the raster decoder."""
    if name.lower().endswith(".csv"):
        return ingest_csv(file_bytes, name, csv_depth)
    return decode_image(file_bytes, name)
