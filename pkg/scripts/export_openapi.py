#!/usr/bin/env python3
"""Regenerate openapi.json from the live FastAPI app.

Run from the repo root after changing service endpoints:

    python scripts/export_openapi.py
"""

import json
from pathlib import Path

from histoscope.service import create_app

out = Path(__file__).resolve().parents[1] / "openapi.json"
out.write_text(json.dumps(create_app(ui_dir=None).openapi(), indent=2) + "\n")
print(f"wrote {out}")
