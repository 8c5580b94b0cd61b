"""Batch command line: statistics reports and plot export without the UI.

Subcommands::

    histoscope stats  IMAGE [OVERLAY ...] [--range LO HI] [--format json|csv]
    histoscope plot   IMAGE [OVERLAY ...] -o OUT.png [--scale ...] [--y-limit N]
    histoscope serve  [--port N]

The first input is the base image, the rest are overlays.  Exit codes are
stable and documented: 0 success, 1 generic input error, 2 unsupported
format, 3 sixteen-bit color, 4 overlay limit or depth mismatch, 5 bad
arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from ._version import __version__
from .errors import HistoscopeError
from .ingest import ImageRecord, decode_any
from .plotting import PlotSpec, render_workspace_png
from .workspace import (
    WorkspaceState,
    add_overlay,
    create_workspace,
    set_range,
    set_scale,
    set_y_limit,
    workspace_stats,
)

EXIT_OK = 0
EXIT_GENERIC = 1
EXIT_UNSUPPORTED_FORMAT = 2
EXIT_SIXTEEN_BIT_COLOR = 3
EXIT_WORKSPACE = 4
EXIT_USAGE = 5

_EXIT_BY_CODE = {
    "UnsupportedFormat": EXIT_UNSUPPORTED_FORMAT,
    "SixteenBitColor": EXIT_SIXTEEN_BIT_COLOR,
    "OverlayLimitExceeded": EXIT_WORKSPACE,
    "DepthMismatch": EXIT_WORKSPACE,
}

DEFAULT_PORT = 8517
JSON_SIGNIFICANT_DIGITS = 12


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports bad arguments instead of exiting itself."""

    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="histoscope", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"histoscope {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    stats = sub.add_parser("stats", help="print range statistics for each input")
    _add_input_args(stats)
    stats.add_argument("--format", choices=("json", "csv"), default="json")
    stats.add_argument("-o", "--output", metavar="PATH", help="write to file instead of stdout")

    plot = sub.add_parser("plot", help="render the histogram workspace to PNG")
    _add_input_args(plot)
    plot.add_argument("-o", "--output", metavar="PATH", required=True)
    plot.add_argument("--scale", choices=("linear", "log10"), default="linear")
    plot.add_argument("--y-limit", type=int, metavar="N")

    serve = sub.add_parser("serve", help="start the local HTTP service")
    serve.add_argument(
        "--port", type=int, metavar="N",
        help=f"listen port (default: $HISTOSCOPE_PORT or {DEFAULT_PORT})",
    )
    return parser


def _add_input_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("inputs", nargs="+", metavar="FILE",
                     help="base image first, overlays after")
    sub.add_argument("--range", nargs=2, type=int, metavar=("LO", "HI"))
    sub.add_argument("--csv-depth", type=int, choices=(8, 16), default=8,
                     help="declared bit depth for CSV inputs")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"histoscope: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.command == "stats":
            return _cmd_stats(args)
        if args.command == "plot":
            return _cmd_plot(args)
        return _cmd_serve(args)
    except _UsageError as exc:
        print(f"histoscope: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HistoscopeError as exc:
        print(f"histoscope: error: {exc.message}", file=sys.stderr)
        return _EXIT_BY_CODE.get(exc.code, EXIT_GENERIC)
    except OSError as exc:
        print(f"histoscope: error: {exc}", file=sys.stderr)
        return EXIT_GENERIC


def entrypoint() -> None:
    sys.exit(main())


def _cmd_stats(args) -> int:
    ws = _build_workspace(args)
    report = stats_report(ws)
    if args.format == "json":
        text = json.dumps(report, indent=2) + "\n"
    else:
        text = _to_csv(report)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_plot(args) -> int:
    ws = _build_workspace(args)
    ws = set_scale(ws, args.scale)
    if args.y_limit is not None:
        if args.y_limit < 1:
            raise _UsageError("--y-limit must be a positive integer")
        ws = set_y_limit(ws, args.y_limit)
    Path(args.output).write_bytes(render_workspace_png(ws, PlotSpec()))
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    port = args.port if args.port is not None else int(
        os.environ.get("HISTOSCOPE_PORT", DEFAULT_PORT)
    )
    uvicorn.run(app, host="127.0.0.1", port=port)
    return EXIT_OK


def _build_workspace(args) -> WorkspaceState:
    records = _decode_all(args.inputs, args.csv_depth)
    ws = create_workspace(records[0])
    for record in records[1:]:
        ws = add_overlay(ws, record)
    if args.range is not None:
        ws = set_range(ws, args.range[0], args.range[1])
    return ws


def _decode_all(paths: list[str], csv_depth: int) -> list[ImageRecord]:
    """Decode inputs (in parallel when there are several), keeping order."""

    def load(path: str) -> ImageRecord:
        data = Path(path).read_bytes()  # OSError surfaces as exit 1, naming the path
        return decode_any(data, Path(path).name, csv_depth)

    if len(paths) == 1:
        return [load(paths[0])]
    with ThreadPoolExecutor(max_workers=min(8, len(paths))) as pool:
        return list(pool.map(load, paths))


def stats_report(ws: WorkspaceState) -> list[dict]:
    """One dict per image: identity, active range, and the six statistics.

    Floats are rounded to 12 significant digits for reproducible diffs.
    """
    report = []
    for img, stats in zip(ws.images, workspace_stats(ws)):
        entry = {
            "file": img.record.source_name,
            "width": img.record.width,
            "height": img.record.height,
            "bit_depth": img.record.bit_depth,
            "range_lo": ws.range.lo,
            "range_hi": ws.range.hi,
        }
        entry.update(stats.as_dict())
        report.append({k: _round_sig(v) for k, v in entry.items()})
    return report


def _round_sig(value):
    if isinstance(value, float):
        return float(f"{value:.{JSON_SIGNIFICANT_DIGITS}g}")
    return value


def _to_csv(report: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(report[0].keys()))
    writer.writeheader()
    for row in report:
        writer.writerow(row)
    return buf.getvalue()
