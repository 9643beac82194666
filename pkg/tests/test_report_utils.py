import io

import pandas as pd

from src.core.collatz import scan_range, trace_orbit
from src.core.rearrange import check_bounds_theorem1
from src.utils.report_utils import (
    SCAN_COLUMNS, format_report, format_trace, scan_records_to_frame, summarize_scan, write_scan_csv
)


def test_scan_frame_columns_and_row_22():
    frame = scan_records_to_frame(scan_range(20, 24, 10000))
    assert list(frame.columns) == SCAN_COLUMNS
    row = frame[frame["n"] == "22"].iloc[0].to_dict()
    assert row == {
        "n": "22", "reached_one": "true", "steps": "11", "word": "E^3 O^1 E^2 O^1 E^1 O^2 E^1",
        "l": "3", "sigma_e": "7", "sigma_o": "4", "C": "201/2048", "corollary1": "holds", "corollary2": "holds"
    }


def test_csv_keeps_exact_values(tmp_path):
    records = scan_range(1, 50, 10000)
    path = tmp_path / "out" / "scan.csv"
    write_scan_csv(records, str(path))
    text = path.read_text()
    assert text.splitlines()[0] == ",".join(SCAN_COLUMNS)
    frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    assert frame.loc[frame["n"] == "22", "C"].iloc[0] == "201/2048"
    assert frame.loc[frame["n"] == "1", "word"].iloc[0] == ""

    buffer = io.StringIO()
    write_scan_csv(records, buffer)
    assert buffer.getvalue() == text


def test_summarize_scan():
    stats = summarize_scan(scan_range(2, 100, 10000))
    assert stats["total_records"] == 99
    assert stats["reached_one"] == 99
    assert stats["corollary1_fails"] == stats["corollary2_fails"] == stats["bounds_fails"] == 0
    assert stats["corollary1_holds"] == stats["applicable"] > 0
    assert 0 < stats["min_c"] <= stats["max_c"] < 1
    assert stats["longest_orbit"][0] == 97
    assert summarize_scan([])["total_records"] == 0


def test_format_report_and_trace(n22_word):
    lines = format_report(check_bounds_theorem1(n22_word, 22), show_steps=True)
    assert "W: 1" in lines
    assert "normal: E^7 O^4" in lines
    assert "C: 201/2048" in lines
    assert "bounds_ok: true" in lines
    assert "  corollary2 compares 23/129 < 16/81" in lines
    assert sum(1 for line in lines if line.startswith("step ")) == 3

    trace_lines = format_trace(trace_orbit(6))
    assert "values: 6 3 5 8 4 2 1" in trace_lines
    assert "word: E^3 O^2 E^1" in trace_lines
