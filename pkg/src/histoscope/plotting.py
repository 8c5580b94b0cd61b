"""Workspace-plot rendering to PNG.

One composite image: the histogram pane on the left (curves in palette
colors, the active range shaded between two vertical bars), a calculations
panel in the middle-right, and a thumbnail column on the far right (base
image plus the first four overlays, titles colored like their curves).

Rendering is a pure function of (state, spec) and must stay byte-stable:
fixed axes rectangles (no auto-layout), fonts bundled with matplotlib, and
a metadata chunk limited to the tool name and version.  The layout
constants below are part of the module's contract; tests and UIs use them
to map intensities to pixel columns in the exported PNG.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from ._version import __version__
from .errors import CanvasTooSmallError
from .workspace import WorkspaceState, workspace_stats

MIN_WIDTH = 640
MIN_HEIGHT = 480
DPI = 100

# Figure-fraction rectangles (left, bottom, width, height).
HIST_RECT = (0.055, 0.095, 0.56, 0.81)
PANEL_LEFT = 0.645
PANEL_WIDTH = 0.20
THUMB_LEFT = 0.862
THUMB_WIDTH = 0.125
THUMB_HEIGHT = 0.145
THUMB_GAP = 0.038
MAX_THUMBNAILS = 5  # base + first four overlays

RANGE_BAR_COLOR = "#13315c"
RANGE_FILL_COLOR = "#5b8dd9"
RANGE_FILL_ALPHA = 0.22
OVERLAY_FILL_ALPHA = 0.6
LOG_FLOOR = 0.8  # just under the smallest positive count


@dataclass(frozen=True)
class PlotSpec:
    """Canvas geometry for the rendered workspace plot."""

    canvas_width: int = 1600
    canvas_height: int = 900

    def __post_init__(self):
        if self.canvas_width < MIN_WIDTH or self.canvas_height < MIN_HEIGHT:
            raise CanvasTooSmallError(
                f"canvas {self.canvas_width}x{self.canvas_height} is below the "
                f"minimum {MIN_WIDTH}x{MIN_HEIGHT}"
            )


def intensity_to_pixel_x(spec: PlotSpec, domain_max: int, intensity: float) -> float:
    """Pixel column (from the left edge) where an intensity lands in the
    histogram pane.  The pane's x-axis always spans [-0.5, domain_max + 0.5]."""
    left, _, width, _ = HIST_RECT
    fraction = (intensity + 0.5) / (domain_max + 1)
    return (left + fraction * width) * spec.canvas_width


def render_workspace_png(ws: WorkspaceState, spec: PlotSpec = PlotSpec()) -> bytes:
    """Render the workspace into PNG bytes (RGBA, non-interlaced)."""
    fig = Figure(figsize=(spec.canvas_width / DPI, spec.canvas_height / DPI), dpi=DPI)
    FigureCanvasAgg(fig)

    _draw_histogram_pane(fig, ws)
    _draw_calculations_panel(fig, ws)
    _draw_thumbnails(fig, ws)

    buf = io.BytesIO()
    fig.savefig(
        buf,
        format="png",
        dpi=DPI,
        metadata={"Software": f"histoscope {__version__}"},
    )
    return buf.getvalue()


def _draw_histogram_pane(fig: Figure, ws: WorkspaceState) -> None:
    ax = fig.add_axes(HIST_RECT)
    domain_max = ws.domain_max
    pane_pixels = int(HIST_RECT[2] * fig.get_figwidth() * fig.get_dpi())

    for i, img in enumerate(ws.images):
        alpha = 0.75 if i == 0 else OVERLAY_FILL_ALPHA
        label = _truncate(img.record.source_name)
        x, y = _display_curve(img.histogram.counts, pane_pixels * 2)
        ax.fill_between(
            x, y, step="mid",
            color=img.color, alpha=alpha, linewidth=0, zorder=2 + 0.1 * i,
        )
        ax.step(
            x, y, where="mid",
            color=img.color, linewidth=1.4, zorder=2.05 + 0.1 * i, label=label,
        )

    ax.axvspan(
        ws.range.lo, ws.range.hi,
        color=RANGE_FILL_COLOR, alpha=RANGE_FILL_ALPHA, zorder=1.5,
    )
    for bound in (ws.range.lo, ws.range.hi):
        ax.axvline(bound, color=RANGE_BAR_COLOR, linewidth=2.5, zorder=6)

    ax.set_xlim(-0.5, domain_max + 0.5)
    if ws.scale == "log10":
        ax.set_yscale("log")
        ax.set_ylim(LOG_FLOOR, max(ws.y_limit, 1))
    else:
        ax.set_ylim(0, ws.y_limit)
    ax.set_xlabel("Pixel intensity")
    ax.set_ylabel("Pixel count")
    ax.set_title(ws.base.record.source_name)
    if len(ws.images) > 1:
        ax.legend(loc="upper right", fontsize=8, framealpha=0.9)


def _draw_calculations_panel(fig: Figure, ws: WorkspaceState) -> None:
    stats = workspace_stats(ws)
    # base image always; plus the most recent overlay when present
    shown = [0] if len(ws.images) == 1 else [0, len(ws.images) - 1]

    y = 0.905
    fig.text(
        PANEL_LEFT, y,
        f"Calculations over [{ws.range.lo}, {ws.range.hi}]",
        fontsize=11, fontweight="bold", family="monospace",
    )
    y -= 0.052
    for idx in shown:
        img = ws.images[idx]
        s = stats[idx]
        fig.text(
            PANEL_LEFT, y, _truncate(img.record.source_name, 26),
            fontsize=10, fontweight="bold", color=img.color, family="monospace",
        )
        y -= 0.038
        mean_text = "undefined" if s.mean is None else f"{s.mean:.4f}"
        lines = (
            f"pixels in range  {s.pixel_count}",
            f"percent of total {s.percent_of_total:.4f}%",
            f"entropy          {s.entropy_bits:.6f} bits",
            f"mean             {mean_text}",
            f"RMS contrast     {s.rms_contrast:.6f}",
            f"total intensity  {s.total_intensity}",
        )
        for line in lines:
            fig.text(PANEL_LEFT, y, line, fontsize=9, color=img.color, family="monospace")
            y -= 0.033
        y -= 0.024

    # bottom-left, under the histogram pane: display state may change with
    # the scale toggle, which must never touch the panel region
    fig.text(
        HIST_RECT[0], 0.018,
        f"scale: {ws.scale}   y-limit: {ws.y_limit}",
        fontsize=9, color="#444444", family="monospace",
    )


def _draw_thumbnails(fig: Figure, ws: WorkspaceState) -> None:
    for slot, img in enumerate(ws.images[:MAX_THUMBNAILS]):
        top = 0.92 - slot * (THUMB_HEIGHT + THUMB_GAP)
        ax = fig.add_axes((THUMB_LEFT, top - THUMB_HEIGHT, THUMB_WIDTH, THUMB_HEIGHT))
        ax.imshow(
            img.record.pixels, cmap="gray", vmin=0, vmax=ws.domain_max,
            aspect="auto", interpolation="nearest",
        )
        ax.set_xticks(())
        ax.set_yticks(())
        for spine in ax.spines.values():
            spine.set_color(img.color)
            spine.set_linewidth(1.6)
        ax.set_title(_truncate(img.record.source_name, 18), fontsize=8, color=img.color)


def _display_curve(counts: np.ndarray, columns: int) -> tuple[np.ndarray, np.ndarray]:
    """Curve points for drawing: one per bin, or a max-preserving
    per-column reduction once bins outnumber the pixel budget (65536-bin
    histograms would otherwise dominate render time without adding any
    visible detail; maxima keep needle peaks intact)."""
    n = len(counts)
    if n <= columns:
        return np.arange(n), counts
    starts = (np.arange(columns, dtype=np.int64) * n) // columns
    values = np.maximum.reduceat(counts, starts)
    ends = np.append(starts[1:], n) - 1
    centers = (starts + ends) / 2.0
    return centers, values


def _truncate(name: str, limit: int = 20) -> str:
    return name if len(name) <= limit else name[: limit - 1] + "…"
