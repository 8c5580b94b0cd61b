"""Container header probing for the five supported raster formats.

Pillow does the actual pixel decoding, but it silently truncates 16-bit
color data (48-bit PNG/TIFF come back as 8-bit ``RGB``), so the stored
depth must be read from the container headers before any decode happens.
This module answers one question: how are samples laid out on disk?
The accept/reject policy built on those facts lives in :mod:`.ingest`.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

from .errors import CorruptFileError, UnsupportedFormatError

PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"

# TIFF tag ids consulted by the prober.
_TAG_BITS_PER_SAMPLE = 258
_TAG_COMPRESSION = 259
_TAG_PHOTOMETRIC = 262
_TAG_SAMPLES_PER_PIXEL = 277
_TAG_PLANAR_CONFIG = 284
_TAG_TILE_TAGS = (322, 323, 324, 325)
_TAG_SAMPLE_FORMAT = 339

# Baseline profile accepted here: uncompressed or PackBits.
_TIFF_COMPRESSION_NONE = 1
_TIFF_COMPRESSION_PACKBITS = 32773


@dataclass(frozen=True)
class FormatInfo:
    """Sample layout as stored in the file, before any decoding.

    ``bits_per_sample`` is the stored size of one channel sample.  For
    palette images it is the palette-index size; the palette entries
    themselves expand to 8-bit RGB, which is what ``palette=True`` signals.
    """

    format: str           # "png" | "jpeg" | "gif" | "bmp" | "tiff"
    bits_per_sample: int
    channels: int
    palette: bool = False
    float_or_signed: bool = False  # TIFF SampleFormat other than unsigned


def probe(data: bytes) -> FormatInfo:
    """Identify the container and report its stored sample layout.

    Raises UnsupportedFormatError for unrecognized magic bytes or
    non-baseline TIFF variants, and CorruptFileError when a recognized
    header is truncated or malformed.
    """
    if data.startswith(PNG_SIGNATURE):
        return _probe_png(data)
    if data.startswith(b"\xff\xd8\xff"):
        return _probe_jpeg(data)
    if data[:6] in (b"GIF87a", b"GIF89a"):
        return FormatInfo("gif", bits_per_sample=8, channels=1, palette=True)
    if data.startswith(b"BM"):
        return _probe_bmp(data)
    if data[:4] in (b"II*\x00", b"MM\x00*"):
        return _probe_tiff(data)
    raise UnsupportedFormatError(
        "unrecognized file format: expected PNG, JPEG, GIF, BMP, or baseline TIFF"
    )


def _probe_png(data: bytes) -> FormatInfo:
    # IHDR must be the first chunk: 8-byte signature, 4-byte length,
    # 4-byte type, then width/height/bitdepth/colortype.
    if len(data) < 26 or data[12:16] != b"IHDR":
        raise CorruptFileError("PNG file has no IHDR chunk")
    bit_depth = data[24]
    color_type = data[25]
    channels = {0: 1, 2: 3, 3: 1, 4: 2, 6: 4}.get(color_type)
    if channels is None:
        raise CorruptFileError(f"PNG has invalid color type {color_type}")
    return FormatInfo("png", bit_depth, channels, palette=(color_type == 3))


def _probe_jpeg(data: bytes) -> FormatInfo:
    # Walk the marker segments looking for a start-of-frame header.
    pos = 2
    n = len(data)
    while pos + 4 <= n:
        if data[pos] != 0xFF:
            raise CorruptFileError("malformed JPEG marker stream")
        marker = data[pos + 1]
        if marker == 0xFF:  # fill byte
            pos += 1
            continue
        if marker in (0xD8, 0x01) or 0xD0 <= marker <= 0xD7:
            pos += 2
            continue
        (seg_len,) = struct.unpack_from(">H", data, pos + 2)
        if 0xC0 <= marker <= 0xCF and marker not in (0xC4, 0xC8, 0xCC):
            if marker not in (0xC0, 0xC1, 0xC2):
                raise UnsupportedFormatError(
                    "JPEG uses an unsupported coding process "
                    "(only baseline, extended sequential, and progressive)"
                )
            if pos + 10 > n:
                break
            precision = data[pos + 4]
            components = data[pos + 9]
            return FormatInfo("jpeg", precision, components)
        pos += 2 + seg_len
    raise CorruptFileError("JPEG file has no frame header")


def _probe_bmp(data: bytes) -> FormatInfo:
    if len(data) < 32:
        raise CorruptFileError("BMP header truncated")
    (bpp,) = struct.unpack_from("<H", data, 28)
    if bpp in (1, 4, 8):
        return FormatInfo("bmp", bits_per_sample=8, channels=1, palette=True)
    if bpp == 24:
        return FormatInfo("bmp", 8, 3)
    if bpp == 32:
        return FormatInfo("bmp", 8, 4)
    if bpp == 16:
        # 5/6-bit channels packed into 16 bits per pixel
        return FormatInfo("bmp", 5, 3)
    if bpp == 64:
        return FormatInfo("bmp", 16, 4)
    raise CorruptFileError(f"BMP has invalid bit count {bpp}")


def _probe_tiff(data: bytes) -> FormatInfo:
    endian = "<" if data[:2] == b"II" else ">"
    try:
        (ifd_offset,) = struct.unpack_from(endian + "I", data, 4)
        tags = _read_ifd(data, endian, ifd_offset)
    except struct.error as exc:
        raise CorruptFileError("TIFF directory truncated") from exc

    for tile_tag in _TAG_TILE_TAGS:
        if tile_tag in tags:
            raise UnsupportedFormatError("tiled TIFF is not baseline; use a stripped file")

    compression = tags.get(_TAG_COMPRESSION, [1])[0]
    if compression not in (_TIFF_COMPRESSION_NONE, _TIFF_COMPRESSION_PACKBITS):
        raise UnsupportedFormatError(
            f"TIFF compression {compression} is not baseline "
            "(only uncompressed and PackBits are accepted)"
        )

    samples = tags.get(_TAG_SAMPLES_PER_PIXEL, [1])[0]
    planar = tags.get(_TAG_PLANAR_CONFIG, [1])[0]
    if planar == 2 and samples > 1:
        raise UnsupportedFormatError("planar-configuration TIFF is not baseline")

    photometric = tags.get(_TAG_PHOTOMETRIC, [1])[0]
    if photometric not in (0, 1, 2, 3):
        raise UnsupportedFormatError(
            f"TIFF photometric interpretation {photometric} is not baseline"
        )

    bits = tags.get(_TAG_BITS_PER_SAMPLE, [1])
    if len(set(bits)) != 1:
        raise UnsupportedFormatError("TIFF with mixed per-channel bit depths")

    sample_format = tags.get(_TAG_SAMPLE_FORMAT, [1])
    return FormatInfo(
        "tiff",
        bits_per_sample=bits[0],
        channels=samples,
        palette=(photometric == 3),
        float_or_signed=any(fmt != 1 for fmt in sample_format),
    )


# TIFF field types holding integers, with their byte sizes.
_INT_TYPES = {1: "B", 3: "H", 4: "I"}


def _read_ifd(data: bytes, endian: str, offset: int) -> dict[int, list[int]]:
    """Read the first image file directory into {tag: [values...]}."""
    (count,) = struct.unpack_from(endian + "H", data, offset)
    tags: dict[int, list[int]] = {}
    for i in range(count):
        base = offset + 2 + i * 12
        tag, ftype, n = struct.unpack_from(endian + "HHI", data, base)
        letter = _INT_TYPES.get(ftype)
        if letter is None:
            continue  # rational/ascii tags are irrelevant here
        size = struct.calcsize(letter) * n
        if size <= 4:
            value_offset = base + 8
        else:
            (value_offset,) = struct.unpack_from(endian + "I", data, base + 8)
        tags[tag] = list(struct.unpack_from(f"{endian}{n}{letter}", data, value_offset))
    return tags
