"""Session state for interactive histogram analysis.

A workspace holds one base image plus up to 22 overlays sharing the base
image's intensity domain, together with the display scale, the y-axis
limit, and the active intensity range.  States are immutable values: every
operation returns a new state, so snapshots can be shared freely across
threads and callers serialize mutations however they like.

Display state (scale, y-limit) and calculation state (range) are kept
deliberately independent: statistics read only the range, never the scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal

from .errors import (
    DepthMismatchError,
    InvalidLimitError,
    NonIntegerRangeError,
    OverlayLimitExceededError,
)
from .histogram import (
    Histogram,
    IntensityRange,
    RangeStatistics,
    build_histogram,
    present_range,
    range_stats,
)
from .ingest import ImageRecord
from .palette import PALETTE, color_for

Scale = Literal["linear", "log10"]

MAX_OVERLAYS = 22
MAX_IMAGES = MAX_OVERLAYS + 1


@dataclass(frozen=True, eq=False)
class WorkspaceImage:
    """One image in the workspace with its histogram and assigned color."""

    record: ImageRecord
    histogram: Histogram
    color_index: int

    @property
    def color(self) -> str:
        return color_for(self.color_index)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WorkspaceImage):
            return NotImplemented
        return (
            self.color_index == other.color_index
            and self.record == other.record
            and self.histogram == other.histogram
        )


@dataclass(frozen=True, eq=False)
class WorkspaceState:
    images: tuple[WorkspaceImage, ...]
    scale: Scale
    y_limit: int
    range: IntensityRange
    domain_depth: int

    @property
    def base(self) -> WorkspaceImage:
        return self.images[0]

    @property
    def overlays(self) -> tuple[WorkspaceImage, ...]:
        return self.images[1:]

    @property
    def domain_max(self) -> int:
        return (1 << self.domain_depth) - 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, WorkspaceState):
            return NotImplemented
        return (
            self.scale == other.scale
            and self.y_limit == other.y_limit
            and self.range == other.range
            and self.domain_depth == other.domain_depth
            and len(self.images) == len(other.images)
            and all(a == b for a, b in zip(self.images, other.images))
        )


def create_workspace(image: ImageRecord) -> WorkspaceState:
    """Open an image with the standard defaults.

    The range starts at [min, max] intensity actually present, the y-limit
    at the height of the tallest bin, and the scale linear.
    """
    hist = build_histogram(image)
    return _with_defaults(WorkspaceImage(image, hist, 0))


def _with_defaults(base: WorkspaceImage) -> WorkspaceState:
    return WorkspaceState(
        images=(base,),
        scale="linear",
        y_limit=int(base.histogram.counts.max()),
        range=present_range(base.histogram),
        domain_depth=base.histogram.bit_depth,
    )


def add_overlay(ws: WorkspaceState, image: ImageRecord) -> WorkspaceState:
    """Overlay another image's histogram, assigning the next palette color.

    The base image's range, scale, and y-limit stay untouched.
    """
    if len(ws.images) >= MAX_IMAGES:
        raise OverlayLimitExceededError(
            f"workspace already holds {MAX_OVERLAYS} overlays"
        )
    if image.bit_depth != ws.domain_depth:
        raise DepthMismatchError(
            f"cannot overlay a {image.bit_depth}-bit image on a "
            f"{ws.domain_depth}-bit workspace; depths must match"
        )
    entry = WorkspaceImage(image, build_histogram(image), len(ws.images))
    return replace(ws, images=ws.images + (entry,))


def clear_overlays(ws: WorkspaceState) -> WorkspaceState:
    """Drop every overlay and reset scale, y-limit, and range to the
    defaults of a freshly created workspace."""
    return _with_defaults(ws.base)


def set_range(ws: WorkspaceState, lo, hi) -> WorkspaceState:
    """Set the calculation range from two typed-in bounds.

    Bounds may arrive in either order and are clamped into the domain;
    non-integer input is rejected and the state left as-is.
    """
    lo = _as_int(lo)
    hi = _as_int(hi)
    lo, hi = min(lo, hi), max(lo, hi)
    lo = max(0, min(ws.domain_max, lo))
    hi = max(0, min(ws.domain_max, hi))
    return replace(ws, range=IntensityRange(lo, hi))


def _as_int(value) -> int:
    if isinstance(value, bool):
        raise NonIntegerRangeError(f"range bounds must be integers, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    raise NonIntegerRangeError(f"range bounds must be integers, got {value!r}")


def apply_click(ws: WorkspaceState, x: float) -> WorkspaceState:
    """Move the range bound nearest to a histogram click.

    The click's x-coordinate rounds to the nearest intensity (clamped to
    the domain) and replaces whichever bound is closer; an exact tie moves
    the lower bound.
    """
    v = max(0, min(ws.domain_max, math.floor(x + 0.5)))
    lo, hi = ws.range.lo, ws.range.hi
    if abs(v - lo) <= abs(v - hi):
        lo = v
    else:
        hi = v
    return replace(ws, range=IntensityRange(min(lo, hi), max(lo, hi)))


def set_scale(ws: WorkspaceState, mode: Scale) -> WorkspaceState:
    """Switch the y-axis between linear and log base 10 display."""
    if mode not in ("linear", "log10"):
        raise ValueError(f"scale must be 'linear' or 'log10', got {mode!r}")
    return replace(ws, scale=mode)


def set_y_limit(ws: WorkspaceState, limit) -> WorkspaceState:
    """Cap the displayed y-axis.  Purely visual; statistics ignore it."""
    if isinstance(limit, float) and limit.is_integer():
        limit = int(limit)
    if not isinstance(limit, int) or isinstance(limit, bool) or limit < 1:
        raise InvalidLimitError(f"y-axis limit must be a positive integer, got {limit!r}")
    return replace(ws, y_limit=limit)


def workspace_stats(ws: WorkspaceState) -> tuple[RangeStatistics, ...]:
    """The six range statistics for every image, over the active range.

    The engine computes all images; display layers may choose to show
    only the base and the most recent overlay.
    """
    return tuple(range_stats(img.histogram, ws.range) for img in ws.images)
