"""Fixed 23-color palette for the base histogram and up to 22 overlays.

Index 0 (blue) always belongs to the base image; overlays take the
following indices in insertion order.  The first ten entries follow the
familiar matplotlib "tab10" cycle; the remaining thirteen were picked for
contrast against the first ten and against each other.  These exact hex
values are part of the tool's contract (plot colors, UI curve colors, and
thumbnail title colors all derive from them).
"""

from __future__ import annotations

PALETTE: tuple[str, ...] = (
    "#1f77b4",  # 0  blue (base image)
    "#ff7f0e",  # 1  orange
    "#2ca02c",  # 2  green
    "#d62728",  # 3  red
    "#9467bd",  # 4  purple
    "#8c564b",  # 5  brown
    "#e377c2",  # 6  pink
    "#7f7f7f",  # 7  gray
    "#bcbd22",  # 8  olive
    "#17becf",  # 9  cyan
    "#000080",  # 10 navy
    "#ffd700",  # 11 gold
    "#8b0000",  # 12 dark red
    "#00fa9a",  # 13 spring green
    "#4b0082",  # 14 indigo
    "#ff1493",  # 15 deep pink
    "#00bfff",  # 16 sky blue
    "#2f4f4f",  # 17 dark slate
    "#ffa07a",  # 18 salmon
    "#7cfc00",  # 19 lawn green
    "#da70d6",  # 20 orchid
    "#b8860b",  # 21 dark goldenrod
    "#5f9ea0",  # 22 cadet blue
)


def color_for(index: int) -> str:
    return PALETTE[index]


def rgb_for(index: int) -> tuple[int, int, int]:
    """Palette entry as an (r, g, b) byte triple."""
    hexcode = PALETTE[index].lstrip("#")
    return tuple(int(hexcode[i : i + 2], 16) for i in (0, 2, 4))  # type: ignore[return-value]
