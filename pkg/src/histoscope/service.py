"""Local JSON-over-HTTP service for the browser UI.

Sessions are in-memory only and expire after 24 hours: this is a desk
instrument, not a server.  Each session wraps one immutable workspace
state; mutations are serialized per session behind a lock, reads hand out
the latest snapshot.  A mutation that fails leaves the previous state in
place, so 4xx responses never corrupt a session.

Errors use {code, message} JSON bodies with the same stable codes as the
CLI.  16-bit histograms travel run-length encoded ([count, repeat] pairs):
a 65536-bin JSON array would dominate every payload.
"""

from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

import numpy as np
from fastapi import FastAPI, File, Form, Request, UploadFile
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from ._version import __version__
from .errors import HistoscopeError
from .ingest import decode_any
from .plotting import PlotSpec, render_workspace_png
from .workspace import (
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

SESSION_TTL_SECONDS = 24 * 60 * 60

_STATUS_BY_CODE = {
    "UnsupportedFormat": 415,
    "SixteenBitColor": 415,
    "UnsupportedDepth": 415,
    "CorruptFile": 400,
    "CsvError": 400,
    "RaggedRows": 400,
    "NonIntegerValue": 400,
    "OutOfDomain": 400,
    "EmptyTable": 400,
    "OverlayLimitExceeded": 409,
    "DepthMismatch": 409,
    "InvalidLimit": 422,
    "NonInteger": 422,
    "RangeOutOfDomain": 422,
    "EmptyRange": 422,
    "CanvasTooSmall": 422,
}


class UnknownSessionError(HistoscopeError):
    code = "UnknownSession"


class UnknownImageError(HistoscopeError):
    code = "UnknownImage"


@dataclass
class Session:
    session_id: str
    state: WorkspaceState
    created_at: float
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    """Thread-safe in-memory session map with TTL-based expiry."""

    def __init__(self, ttl: float = SESSION_TTL_SECONDS, clock=time.time):
        self._ttl = ttl
        self._clock = clock
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, state: WorkspaceState) -> Session:
        session = Session(secrets.token_hex(16), state, self._clock())
        with self._lock:
            self._sweep()
            self._sessions[session.session_id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
            if session is not None and self._expired(session):
                del self._sessions[session_id]
                session = None
        if session is None:
            raise UnknownSessionError(f"unknown or expired session {session_id!r}")
        return session

    def _expired(self, session: Session) -> bool:
        return self._clock() - session.created_at > self._ttl

    def _sweep(self) -> None:
        dead = [sid for sid, s in self._sessions.items() if self._expired(s)]
        for sid in dead:
            del self._sessions[sid]

    def __len__(self) -> int:
        return len(self._sessions)


class RangeBody(BaseModel):
    lo: int
    hi: int


class ClickBody(BaseModel):
    x: float


class ScaleBody(BaseModel):
    mode: Literal["linear", "log10"] | None = None
    y_limit: int | None = None


def run_length_encode(counts: np.ndarray) -> list[list[int]]:
    """Collapse a bin-count array into [value, repeat] pairs."""
    boundaries = np.flatnonzero(np.diff(counts)) + 1
    starts = np.concatenate(([0], boundaries))
    lengths = np.diff(np.concatenate((starts, [len(counts)])))
    return [[int(counts[s]), int(n)] for s, n in zip(starts, lengths)]


def _summary(session: Session) -> dict:
    ws = session.state
    return {
        "session_id": session.session_id,
        "scale": ws.scale,
        "y_limit": ws.y_limit,
        "range": {"lo": ws.range.lo, "hi": ws.range.hi},
        "domain_depth": ws.domain_depth,
        "domain_max": ws.domain_max,
        "images": [
            {
                "name": img.record.source_name,
                "width": img.record.width,
                "height": img.record.height,
                "bit_depth": img.record.bit_depth,
                "total_pixels": img.record.total_pixels,
                "color_index": img.color_index,
                "color": img.color,
            }
            for img in ws.images
        ],
    }


def create_app(store: SessionStore | None = None, ui_dir: Path | None = None) -> FastAPI:
    app = FastAPI(
        title="histoscope service",
        version=__version__,
        description="Session-based pixel-intensity histogram analysis.",
    )
    sessions = store if store is not None else SessionStore()

    @app.exception_handler(HistoscopeError)
    async def _domain_error(request: Request, exc: HistoscopeError):
        if isinstance(exc, UnknownSessionError):
            status = 404
        elif isinstance(exc, UnknownImageError):
            status = 404
        else:
            status = _STATUS_BY_CODE.get(exc.code, 400)
        return JSONResponse(status_code=status,
                            content={"code": exc.code, "message": exc.message})

    @app.exception_handler(RequestValidationError)
    async def _schema_error(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400,
                            content={"code": "SchemaViolation", "message": str(exc.errors())})

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok", "version": __version__}

    @app.post("/sessions")
    async def create_session(file: UploadFile = File(...), csv_depth: int = Form(8)):
        data = await file.read()
        record = decode_any(data, file.filename or "upload", csv_depth)
        session = sessions.create(create_workspace(record))
        return _summary(session)

    @app.post("/sessions/{session_id}/overlays")
    async def upload_overlay(session_id: str, file: UploadFile = File(...),
                             csv_depth: int = Form(8)):
        data = await file.read()
        session = sessions.get(session_id)
        record = decode_any(data, file.filename or "upload", csv_depth)
        with session.lock:
            session.state = add_overlay(session.state, record)
        return _summary(session)

    @app.delete("/sessions/{session_id}/overlays")
    async def clear_session_overlays(session_id: str):
        session = sessions.get(session_id)
        with session.lock:
            session.state = clear_overlays(session.state)
        return _summary(session)

    @app.put("/sessions/{session_id}/range")
    async def put_range(session_id: str, body: RangeBody):
        session = sessions.get(session_id)
        with session.lock:
            session.state = set_range(session.state, body.lo, body.hi)
        return _summary(session)

    @app.post("/sessions/{session_id}/click")
    async def post_click(session_id: str, body: ClickBody):
        session = sessions.get(session_id)
        with session.lock:
            session.state = apply_click(session.state, body.x)
        return _summary(session)

    @app.put("/sessions/{session_id}/scale")
    async def put_scale(session_id: str, body: ScaleBody):
        session = sessions.get(session_id)
        with session.lock:
            state = session.state
            if body.mode is not None:
                state = set_scale(state, body.mode)
            if body.y_limit is not None:
                state = set_y_limit(state, body.y_limit)
            session.state = state
        return _summary(session)

    @app.get("/sessions/{session_id}/stats")
    async def get_stats(session_id: str):
        ws = sessions.get(session_id).state
        return [
            {
                "name": img.record.source_name,
                "color_index": img.color_index,
                "color": img.color,
                **stats.as_dict(),
            }
            for img, stats in zip(ws.images, workspace_stats(ws))
        ]

    @app.get("/sessions/{session_id}/histogram")
    async def get_histogram(session_id: str, image: int = 0):
        ws = sessions.get(session_id).state
        if not 0 <= image < len(ws.images):
            raise UnknownImageError(f"no image at index {image}")
        hist = ws.images[image].histogram
        payload = {
            "image": image,
            "bit_depth": hist.bit_depth,
            "total_pixels": hist.total_pixels,
        }
        if hist.bit_depth == 8:
            payload["encoding"] = "plain"
            payload["counts"] = hist.counts.tolist()
        else:
            payload["encoding"] = "rle"
            payload["runs"] = run_length_encode(hist.counts)
        return payload

    @app.get("/sessions/{session_id}/plot.png")
    async def get_plot(session_id: str, width: int = 1600, height: int = 900):
        ws = sessions.get(session_id).state
        png = render_workspace_png(ws, PlotSpec(width, height))
        return Response(content=png, media_type="image/png")

    _mount_ui(app, ui_dir)
    return app


def _mount_ui(app: FastAPI, ui_dir: Path | None) -> None:
    """Serve the built browser UI from / when the bundle exists."""
    if ui_dir is None:
        ui_dir = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if ui_dir.is_dir():
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")


app = create_app()
