"""Unit-bin intensity histograms and range statistics.

The histogram has one bin per representable intensity (256 or 65536 bins),
built in a single pass over the pixels.  All statistics are then O(bins)
reductions over an inclusive bin range [lo, hi]:

* pixel count N and its percentage of the image,
* first-order ("monkey model") Shannon entropy of the bin probabilities,
  H = -sum(q_k * log2(q_k)) with q_k = counts[k] / N, in bits,
* mean intensity,
* RMS contrast: the population standard deviation divided by the domain
  maximum d = 2**bit_depth - 1, normalizing into [0, 1],
* total intensity (an exact integer sum).

Counts and intensity sums use exact integer arithmetic; means, variances,
and entropies accumulate in float64 over bins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyRangeError, NonIntegerRangeError, RangeOutOfDomainError
from .ingest import ImageRecord


@dataclass(frozen=True, eq=False)
class Histogram:
    """Bin counts over the full intensity domain of one image.

    ``counts[v]`` is the number of pixels with intensity ``v``; the array
    always spans the whole domain (length ``2**bit_depth``) regardless of
    which intensities actually occur.
    """

    bit_depth: int
    counts: np.ndarray
    total_pixels: int

    def __post_init__(self):
        if self.bit_depth not in (8, 16):
            raise ValueError(f"bit_depth must be 8 or 16, got {self.bit_depth}")
        if len(self.counts) != 1 << self.bit_depth:
            raise ValueError(
                f"expected {1 << self.bit_depth} bins, got {len(self.counts)}"
            )
        if int(self.counts.sum()) != self.total_pixels:
            raise ValueError("bin counts do not sum to total_pixels")
        self.counts.flags.writeable = False

    @property
    def domain_max(self) -> int:
        return (1 << self.bit_depth) - 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, Histogram):
            return NotImplemented
        return (
            self.bit_depth == other.bit_depth
            and self.total_pixels == other.total_pixels
            and bool(np.array_equal(self.counts, other.counts))
        )


@dataclass(frozen=True)
class IntensityRange:
    """Inclusive [lo, hi] slice of the intensity axis."""

    lo: int
    hi: int

    def __post_init__(self):
        for bound in (self.lo, self.hi):
            if not isinstance(bound, (int, np.integer)) or isinstance(bound, bool):
                raise NonIntegerRangeError(f"range bounds must be integers, got {bound!r}")
        if self.lo < 0:
            raise RangeOutOfDomainError(f"range lower bound {self.lo} is negative")
        if self.lo > self.hi:
            raise ValueError(f"range is inverted: [{self.lo}, {self.hi}]")


@dataclass(frozen=True)
class RangeStatistics:
    """The six quantities computed over one range of one histogram.

    ``mean`` is ``None`` for an empty range (zero pixels); the other
    fields degrade to zero so interactive consumers can render directly.
    """

    pixel_count: int
    percent_of_total: float
    entropy_bits: float
    mean: float | None
    rms_contrast: float
    total_intensity: int

    def as_dict(self) -> dict:
        return {
            "pixel_count": self.pixel_count,
            "percent_of_total": self.percent_of_total,
            "entropy_bits": self.entropy_bits,
            "mean": self.mean,
            "rms_contrast": self.rms_contrast,
            "total_intensity": self.total_intensity,
        }


def build_histogram(image: ImageRecord) -> Histogram:
    """Tally every pixel into unit-width bins (one pass)."""
    counts = np.bincount(image.pixels.ravel(), minlength=1 << image.bit_depth)
    return Histogram(image.bit_depth, counts.astype(np.int64), image.total_pixels)


def full_range(hist: Histogram) -> IntensityRange:
    """The whole domain: [0, 2**bit_depth - 1]."""
    return IntensityRange(0, hist.domain_max)


def present_range(hist: Histogram) -> IntensityRange:
    """[min, max] intensity actually present in the image."""
    occupied = np.flatnonzero(hist.counts)
    return IntensityRange(int(occupied[0]), int(occupied[-1]))


def _bins(hist: Histogram, rng: IntensityRange) -> np.ndarray:
    if rng.hi > hist.domain_max:
        raise RangeOutOfDomainError(
            f"range [{rng.lo}, {rng.hi}] exceeds the {hist.bit_depth}-bit "
            f"domain [0, {hist.domain_max}]"
        )
    return hist.counts[rng.lo : rng.hi + 1]


def range_entropy(hist: Histogram, rng: IntensityRange) -> float:
    """First-order Shannon entropy of the in-range bin probabilities, in bits.

    Empty bins contribute nothing (0 * log 0 = 0); an empty range has
    entropy 0.  Always within [0, bit_depth].
    """
    counts = _bins(hist, rng)
    n = int(counts.sum())
    if n == 0:
        return 0.0
    q = counts[counts > 0] / n
    return float(-(q * np.log2(q)).sum()) + 0.0


def range_mean(hist: Histogram, rng: IntensityRange) -> float:
    """Mean in-range intensity: exact integer sum divided by pixel count."""
    counts = _bins(hist, rng)
    n = int(counts.sum())
    if n == 0:
        raise EmptyRangeError(
            f"no pixels in range [{rng.lo}, {rng.hi}]; mean is undefined"
        )
    return _intensity_sum(counts, rng.lo) / n


def range_rms_contrast(hist: Histogram, rng: IntensityRange) -> float:
    """Population standard deviation of in-range intensities over d.

    Returns 0.0 for an empty range (no pixels, no contrast).
    """
    counts = _bins(hist, rng)
    n = int(counts.sum())
    if n == 0:
        return 0.0
    mean = _intensity_sum(counts, rng.lo) / n
    values = np.arange(rng.lo, rng.hi + 1, dtype=np.float64)
    variance = float(counts @ (values - mean) ** 2) / n
    return math.sqrt(variance) / hist.domain_max


def range_stats(hist: Histogram, rng: IntensityRange) -> RangeStatistics:
    """All six range statistics in one pass over the bin slice."""
    counts = _bins(hist, rng)
    n = int(counts.sum())
    percent = 100 * n / hist.total_pixels
    if n == 0:
        return RangeStatistics(0, percent, 0.0, None, 0.0, 0)
    total = _intensity_sum(counts, rng.lo)
    mean = total / n
    values = np.arange(rng.lo, rng.hi + 1, dtype=np.float64)
    variance = float(counts @ (values - mean) ** 2) / n
    q = counts[counts > 0] / n
    entropy = float(-(q * np.log2(q)).sum()) + 0.0
    return RangeStatistics(
        pixel_count=n,
        percent_of_total=percent,
        entropy_bits=entropy,
        mean=mean,
        rms_contrast=math.sqrt(variance) / hist.domain_max,
        total_intensity=total,
    )


def _intensity_sum(counts: np.ndarray, lo: int) -> int:
    """Exact integer sum of value * count over a bin slice starting at lo."""
    values = np.arange(lo, lo + len(counts), dtype=np.int64)
    return int(values @ counts)
