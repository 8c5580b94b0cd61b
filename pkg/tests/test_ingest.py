"""Decoder and CSV ingestion tests.

PNG/TIFF fixtures come from the hand-rolled writers in imagegen.py, so
none of these tests decode Pillow output with Pillow.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import imagegen as gen
from histoscope.errors import (
    CorruptFileError,
    EmptyTableError,
    NonIntegerValueError,
    OutOfDomainError,
    RaggedRowsError,
    SixteenBitColorError,
    UnsupportedDepthError,
    UnsupportedFormatError,
)
from histoscope.ingest import (
    LargeImageWarning,
    decode_any,
    decode_image,
    ingest_csv,
    rgb_to_gray,
)
from oracles import naive_gray

channel = st.integers(0, 255)


class TestRgbToGray:
    def test_identity_on_grays_exhaustive(self):
        for v in range(256):
            assert rgb_to_gray(v, v, v) == v

    def test_primary_channels(self):
        # round-half-up of 0.299/0.587/0.114 * 255
        assert rgb_to_gray(255, 0, 0) == 76
        assert rgb_to_gray(0, 255, 0) == 150
        assert rgb_to_gray(0, 0, 255) == 29

    def test_black_and_white(self):
        assert rgb_to_gray(0, 0, 0) == 0
        assert rgb_to_gray(255, 255, 255) == 255

    @given(channel, channel, channel)
    def test_matches_decimal_oracle(self, r, g, b):
        assert rgb_to_gray(r, g, b) == naive_gray(r, g, b)

    @given(channel, channel, channel, st.integers(1, 255))
    def test_monotone_in_each_channel(self, r, g, b, step):
        base = rgb_to_gray(r, g, b)
        if r + step <= 255:
            assert rgb_to_gray(r + step, g, b) >= base
        if g + step <= 255:
            assert rgb_to_gray(r, g + step, b) >= base
        if b + step <= 255:
            assert rgb_to_gray(r, g, b + step) >= base


class TestDecodePng:
    def test_gray8_passthrough(self):
        data = gen.make_png(np.full((4, 4), 7, dtype=np.uint8))
        rec = decode_image(data, "gray.png")
        assert (rec.width, rec.height, rec.bit_depth) == (4, 4, 8)
        assert rec.pixels.dtype == np.uint8
        assert (rec.pixels == 7).all()

    def test_rgb8_converts_via_luma(self):
        rgb = np.zeros((2, 2, 3), dtype=np.uint8)
        rgb[..., 0] = 255  # pure red everywhere
        rec = decode_image(gen.make_png(rgb, color_type=gen.PNG_COLOR_RGB), "red.png")
        assert rec.bit_depth == 8
        assert (rec.pixels == 76).all()

    def test_rgb8_random_matches_per_pixel_oracle(self):
        rng = np.random.default_rng(42)
        rgb = rng.integers(0, 256, size=(9, 7, 3), dtype=np.uint8)
        rec = decode_image(gen.make_png(rgb, color_type=gen.PNG_COLOR_RGB), "rand.png")
        expected = [
            naive_gray(*map(int, rgb[i, j])) for i in range(9) for j in range(7)
        ]
        assert rec.pixels.ravel().tolist() == expected

    def test_gray16_passthrough_max_value(self):
        data = gen.make_png(np.array([[65535]], dtype=np.uint16), bit_depth=16)
        rec = decode_image(data, "one.png")
        assert (rec.width, rec.height, rec.bit_depth) == (1, 1, 16)
        assert rec.pixels.dtype == np.uint16
        assert rec.pixels[0, 0] == 65535

    def test_gray16_values_preserved(self):
        arr = np.array([[0, 256], [300, 65535]], dtype=np.uint16)
        rec = decode_image(gen.make_png(arr, bit_depth=16), "g16.png")
        assert rec.pixels.tolist() == arr.tolist()

    @pytest.mark.parametrize("color_type", [gen.PNG_COLOR_RGB, gen.PNG_COLOR_RGBA,
                                            gen.PNG_COLOR_GRAY_ALPHA])
    def test_16bit_multichannel_rejected_with_conversion_hint(self, color_type):
        channels = {2: 3, 6: 4, 4: 2}[color_type]
        arr = np.zeros((2, 2, channels), dtype=np.uint16)
        with pytest.raises(SixteenBitColorError, match="[Cc]onvert"):
            decode_image(gen.make_png(arr, bit_depth=16, color_type=color_type), "c16.png")

    @pytest.mark.parametrize("bit_depth", [1, 2, 4])
    def test_sub8bit_gray_rejected(self, bit_depth):
        arr = np.zeros((4, 8), dtype=np.uint8)
        with pytest.raises(UnsupportedDepthError):
            decode_image(gen.make_png(arr, bit_depth=bit_depth), "low.png")

    def test_palette_expands_to_rgb_then_luma(self):
        palette = [(255, 0, 0), (0, 255, 0), (0, 0, 255), (40, 40, 40)]
        idx = np.array([[0, 1], [2, 3]], dtype=np.uint8)
        rec = decode_image(
            gen.make_png(idx, color_type=gen.PNG_COLOR_PALETTE, palette=palette),
            "pal.png",
        )
        assert rec.pixels.tolist() == [[76, 150], [29, 40]]

    def test_rgba_alpha_discarded(self):
        rgba = np.zeros((2, 2, 4), dtype=np.uint8)
        rgba[..., 1] = 255  # green
        rgba[..., 3] = 10   # nearly transparent; must not matter
        rec = decode_image(gen.make_png(rgba, color_type=gen.PNG_COLOR_RGBA), "a.png")
        assert (rec.pixels == 150).all()

    def test_deterministic(self):
        rng = np.random.default_rng(7)
        data = gen.make_png(rng.integers(0, 256, (8, 8), dtype=np.uint8))
        assert decode_image(data, "a.png") == decode_image(data, "a.png")

    def test_truncated_png_is_corrupt(self):
        data = gen.make_png(np.zeros((16, 16), dtype=np.uint8))
        with pytest.raises(CorruptFileError):
            decode_image(data[:40], "trunc.png")

    def test_large_image_warns_but_decodes(self):
        data = gen.make_png(np.zeros((2, 1100), dtype=np.uint8))
        with pytest.warns(LargeImageWarning):
            rec = decode_image(data, "wide.png")
        assert rec.width == 1100


class TestDecodeTiff:
    def test_gray8(self):
        arr = np.array([[1, 2], [3, 4]], dtype=np.uint8)
        rec = decode_image(gen.make_tiff(arr, 8), "g8.tif")
        assert rec.bit_depth == 8
        assert rec.pixels.tolist() == arr.tolist()

    @pytest.mark.parametrize("big_endian", [False, True])
    def test_gray16_both_byte_orders(self, big_endian):
        arr = np.array([[0, 16000], [32000, 65535]], dtype=np.uint16)
        rec = decode_image(gen.make_tiff(arr, 16, big_endian=big_endian), "g16.tif")
        assert rec.bit_depth == 16
        assert rec.pixels.tolist() == arr.tolist()

    def test_rgb8_converts(self):
        arr = np.zeros((2, 2, 3), dtype=np.uint8)
        arr[..., 2] = 255
        rec = decode_image(gen.make_tiff(arr, 8), "b.tif")
        assert (rec.pixels == 29).all()

    def test_16bit_rgb_rejected_with_conversion_hint(self):
        arr = np.zeros((2, 2, 3), dtype=np.uint16)
        with pytest.raises(SixteenBitColorError, match="grayscale"):
            decode_image(gen.make_tiff(arr, 16), "c16.tif")

    def test_float32_rejected(self):
        arr = np.zeros((2, 2), dtype=np.float32)
        with pytest.raises(UnsupportedDepthError):
            decode_image(gen.make_tiff(arr, 32, sample_format=3), "f32.tif")

    def test_packbits_accepted(self):
        arr = np.arange(64, dtype=np.uint8).reshape(8, 8)
        rec = decode_image(gen.make_tiff(arr, 8, compression=32773), "pb.tif")
        assert rec.pixels.tolist() == arr.tolist()

    def test_lzw_rejected_as_non_baseline(self):
        arr = np.zeros((2, 2), dtype=np.uint8)
        with pytest.raises(UnsupportedFormatError, match="baseline"):
            decode_image(gen.make_tiff(arr, 8, compression=5), "lzw.tif")

    def test_tiled_rejected_as_non_baseline(self):
        arr = np.zeros((2, 2), dtype=np.uint8)
        with pytest.raises(UnsupportedFormatError, match="tile"):
            decode_image(gen.make_tiff(arr, 8, tiled=True), "tiled.tif")

    def test_planar_rgb_rejected(self):
        arr = np.zeros((2, 2, 3), dtype=np.uint8)
        with pytest.raises(UnsupportedFormatError, match="planar"):
            decode_image(gen.make_tiff(arr, 8, planar=2), "planar.tif")


class TestDecodeOtherFormats:
    def test_bmp_gray(self):
        arr = np.array([[0, 128], [200, 255]], dtype=np.uint8)
        rec = decode_image(gen.make_bmp(arr), "g.bmp")
        assert rec.pixels.tolist() == arr.tolist()

    def test_bmp_rgb(self):
        arr = np.zeros((3, 3, 3), dtype=np.uint8)
        arr[..., 0] = 200
        rec = decode_image(gen.make_bmp(arr), "c.bmp")
        assert (rec.pixels == rgb_to_gray(200, 0, 0)).all()

    def test_bmp_16bpp_rejected(self):
        with pytest.raises(UnsupportedDepthError):
            decode_image(gen.make_bmp16_header(), "lo.bmp")

    def test_gif_values(self):
        arr = np.array([[10, 10], [200, 200]], dtype=np.uint8)
        rec = decode_image(gen.make_gif([arr]), "g.gif")
        assert sorted(rec.pixels.ravel().tolist()) == [10, 10, 200, 200]

    def test_gif_multiframe_uses_first_frame(self):
        first = np.full((3, 3), 10, dtype=np.uint8)
        second = np.full((3, 3), 200, dtype=np.uint8)
        rec = decode_image(gen.make_gif([first, second]), "anim.gif")
        assert (rec.pixels == 10).all()

    def test_jpeg_gray_uniform(self):
        # a uniform image survives JPEG's DC-only encoding exactly
        arr = np.full((16, 16), 128, dtype=np.uint8)
        rec = decode_image(gen.make_jpeg(arr), "u.jpg")
        assert rec.bit_depth == 8
        assert (rec.pixels == 128).all()

    def test_progressive_jpeg_accepted(self):
        arr = np.full((16, 16), 90, dtype=np.uint8)
        rec = decode_image(gen.make_jpeg(arr, progressive=True), "p.jpg")
        assert (rec.pixels == 90).all()

    def test_unknown_magic_rejected(self):
        with pytest.raises(UnsupportedFormatError):
            decode_image(b"\x00\x01\x02\x03 not an image", "blob.bin")

    def test_empty_bytes_rejected(self):
        with pytest.raises(UnsupportedFormatError):
            decode_image(b"", "empty")


class TestIngestCsv:
    def test_2x2_table(self):
        rec = ingest_csv(b"0,255\n255,0", "t.csv", 8)
        assert (rec.width, rec.height, rec.bit_depth) == (2, 2, 8)
        assert rec.pixels.ravel().tolist() == [0, 255, 255, 0]

    def test_single_row_is_height_one(self):
        rec = ingest_csv(b"5,5,5,5", "row.csv", 8)
        assert (rec.width, rec.height) == (4, 1)
        assert (rec.pixels == 5).all()

    def test_single_column(self):
        rec = ingest_csv(b"1\n2\n3", "col.csv", 8)
        assert (rec.width, rec.height) == (1, 3)

    def test_out_of_domain_16bit(self):
        with pytest.raises(OutOfDomainError, match="70000"):
            ingest_csv(b"0,70000", "big.csv", 16)

    def test_out_of_domain_8bit(self):
        with pytest.raises(OutOfDomainError):
            ingest_csv(b"0,256", "big.csv", 8)

    def test_negative_rejected(self):
        with pytest.raises(OutOfDomainError):
            ingest_csv(b"0,-1", "neg.csv", 8)

    def test_ragged_rows(self):
        with pytest.raises(RaggedRowsError, match="row 2"):
            ingest_csv(b"1,2,3\n4,5", "ragged.csv", 8)

    def test_non_integer(self):
        with pytest.raises(NonIntegerValueError):
            ingest_csv(b"1,2.5", "frac.csv", 8)

    def test_non_numeric(self):
        with pytest.raises(NonIntegerValueError):
            ingest_csv(b"1,abc", "text.csv", 8)

    def test_integral_float_accepted(self):
        rec = ingest_csv(b"1.0,2", "f.csv", 8)
        assert rec.pixels.ravel().tolist() == [1, 2]

    def test_empty_table(self):
        with pytest.raises(EmptyTableError):
            ingest_csv(b"\n\n", "blank.csv", 8)

    def test_trailing_newline_tolerated(self):
        rec = ingest_csv(b"7,8\n9,10\n", "t.csv", 8)
        assert rec.height == 2

    def test_16bit_values(self):
        rec = ingest_csv(b"0,65535", "t16.csv", 16)
        assert rec.bit_depth == 16
        assert rec.pixels.ravel().tolist() == [0, 65535]

    @given(
        st.lists(
            st.lists(st.integers(0, 255), min_size=1, max_size=6),
            min_size=1,
            max_size=6,
        ).filter(lambda rows: len({len(r) for r in rows}) == 1)
    )
    @settings(max_examples=50)
    def test_round_trip(self, rows):
        text = "\n".join(",".join(str(v) for v in row) for row in rows)
        rec = ingest_csv(text.encode(), "rt.csv", 8)
        assert rec.pixels.tolist() == rows


class TestDecodeAny:
    def test_csv_dispatch(self):
        rec = decode_any(b"1,2", "table.CSV", csv_depth=16)
        assert rec.bit_depth == 16

    def test_image_dispatch(self):
        data = gen.make_png(np.zeros((2, 2), dtype=np.uint8))
        assert decode_any(data, "img.png").bit_depth == 8
