"""Pixel-intensity histogram analysis for 8/16-bit grayscale images.

Computes first-order Shannon entropy, RMS contrast, mean, pixel counts,
and total intensity over user-selected intensity ranges; overlays multiple
histograms; renders workspace plots to PNG.  Ships a CLI (``histoscope``)
and a local HTTP service for the browser UI.
"""

from ._version import __version__
from .errors import HistoscopeError
from .histogram import (
    Histogram,
    IntensityRange,
    RangeStatistics,
    build_histogram,
    full_range,
    present_range,
    range_entropy,
    range_mean,
    range_rms_contrast,
    range_stats,
)
from .ingest import ImageRecord, decode_any, decode_image, ingest_csv, rgb_to_gray
from .palette import PALETTE
from .plotting import PlotSpec, render_workspace_png
from .workspace import (
    MAX_OVERLAYS,
    WorkspaceState,
    add_overlay,
    apply_click,
    clear_overlays,
    create_workspace,
    set_range,
    set_scale,
    set_y_limit,
    workspace_stats,
)

__all__ = [
    "HistoscopeError",
    "Histogram",
    "IntensityRange",
    "RangeStatistics",
    "ImageRecord",
    "WorkspaceState",
    "MAX_OVERLAYS",
    "PALETTE",
    "PlotSpec",
    "render_workspace_png",
    "build_histogram",
    "full_range",
    "present_range",
    "range_entropy",
    "range_mean",
    "range_rms_contrast",
    "range_stats",
    "decode_any",
    "decode_image",
    "ingest_csv",
    "rgb_to_gray",
    "add_overlay",
    "apply_click",
    "clear_overlays",
    "create_workspace",
    "set_range",
    "set_scale",
    "set_y_limit",
    "workspace_stats",
    "__version__",
]
