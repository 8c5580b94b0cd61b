import numpy as np
import pytest

from histoscope.ingest import ImageRecord


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    reports = []
    for key in ("passed", "failed"):
        reports.extend(r for r in terminalreporter.stats.get(key, [])
                       if "test_acceptance" in r.nodeid and r.when == "call")
    if not reports:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for report in sorted(reports, key=lambda r: r.nodeid):
        verdict = "PASS" if report.passed else "FAIL"
        terminalreporter.write_line(f"[{verdict}] {report.nodeid.split('::')[-1]}")


def record_from(values, bit_depth=8, name="fixture") -> ImageRecord:
    """Build an ImageRecord from a flat list or 2D array of intensities."""
    arr = np.asarray(values, dtype=np.uint8 if bit_depth == 8 else np.uint16)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    return ImageRecord(name, arr.shape[1], arr.shape[0], bit_depth, arr.copy())


@pytest.fixture
def two_level_record() -> ImageRecord:
    """The canonical 2x2 [0, 0, 255, 255] image."""
    return record_from([[0, 0], [255, 255]])


@pytest.fixture
def four_level_record() -> ImageRecord:
    """The canonical [10, 20, 30, 40] image."""
    return record_from([[10, 20], [30, 40]])
