import os
import logging
from typing import Any, Dict, List, Optional, TextIO, Union

import pandas as pd

from src.core.collatz import OrbitTrace, ScanRecord
from src.core.rationals import format_decimal_approx, format_rational
from src.core.rearrange import RearrangementReport, Verdict, corollary2_sides

# Set up logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

SCAN_COLUMNS = ["n", "reached_one", "steps", "word", "l", "sigma_e", "sigma_o", "C", "corollary1", "corollary2"]


def _flag(value: Optional[bool]) -> str:
    if value is None:
        return "na"
    return "true" if value else "false"


def scan_records_to_frame(records: List[ScanRecord]) -> pd.DataFrame:
    """
    Convert scan records to a DataFrame of pre-rendered strings

    Every cell is a string so that writing the frame never reformats an
    exact value.

    Args:
        records: Scan records in ascending n

    Returns:
        DataFrame with the SCAN_COLUMNS columns
    """
    rows = [
        {
            "n": str(record.n),
            "reached_one": _flag(record.reached_one),
            "steps": str(record.steps),
            "word": str(record.word),
            "l": str(record.l),
            "sigma_e": str(record.sigma_e),
            "sigma_o": str(record.sigma_o),
            "C": format_rational(record.c),
            "corollary1": record.corollary1.value,
            "corollary2": record.corollary2.value
        }
        for record in records
    ]
    return pd.DataFrame(rows, columns=SCAN_COLUMNS, dtype=str)


def write_scan_csv(records: List[ScanRecord], destination: Union[str, TextIO]) -> None:
    """
    Write scan records as CSV to a path or an open text stream

    Args:
        records: Scan records
        destination: File path or stream
    """
    frame = scan_records_to_frame(records)
    if isinstance(destination, str):
        directory = os.path.dirname(destination)
        if directory:
            os.makedirs(directory, exist_ok=True)
    frame.to_csv(destination, index=False, lineterminator="\n")
    if isinstance(destination, str):
        logger.info(f"Scan CSV with {len(frame)} rows saved to {destination}")


def summarize_scan(records: List[ScanRecord]) -> Dict[str, Any]:
    """
    Get summary statistics for a scan

    Returns:
        Dictionary containing summary statistics
    """
    if not records:
        return {
            "total_records": 0,
            "reached_one": 0,
            "applicable": 0,
            "corollary1_holds": 0,
            "corollary1_fails": 0,
            "corollary2_holds": 0,
            "corollary2_fails": 0,
            "bounds_fails": 0,
            "min_c": None,
            "max_c": None,
            "longest_orbit": None
        }

    applicable = [record for record in records if record.corollary1 is not Verdict.NOT_APPLICABLE]
    longest = max(records, key=lambda record: (record.steps, -record.n))

    stats = {
        "total_records": len(records),
        "reached_one": sum(1 for record in records if record.reached_one),
        "applicable": len(applicable),
        "corollary1_holds": sum(1 for record in records if record.corollary1 is Verdict.HOLDS),
        "corollary1_fails": sum(1 for record in records if record.corollary1 is Verdict.FAILS),
        "corollary2_holds": sum(1 for record in records if record.corollary2 is Verdict.HOLDS),
        "corollary2_fails": sum(1 for record in records if record.corollary2 is Verdict.FAILS),
        # For applicable records W = 1, so the C bound reads 0 < C < 1
        "bounds_fails": sum(1 for record in applicable if not 0 < record.c < 1),
        "min_c": min((record.c for record in applicable), default=None),
        "max_c": max((record.c for record in applicable), default=None),
        "longest_orbit": (longest.n, longest.steps)
    }
    return stats


def format_summary(stats: Dict[str, Any]) -> List[str]:
    lines = []
    for key, value in stats.items():
        if key in ("min_c", "max_c") and value is not None:
            value = f"{format_rational(value)} ({format_decimal_approx(value)})"
        elif key == "longest_orbit" and value is not None:
            value = f"n={value[0]} ({value[1]} steps)"
        lines.append(f"{key}: {value}")
    return lines


def format_trace(trace: OrbitTrace) -> List[str]:
    return [
        f"n: {trace.start}",
        f"values: {' '.join(str(value) for value in trace.values)}",
        f"word: {trace.word}",
        f"l: {trace.l}",
        f"steps: {trace.steps}",
        f"reached_one: {_flag(trace.reached_one)}"
    ]


def format_report(report: RearrangementReport, show_steps: bool = False, with_value: bool = True) -> List[str]:
    """
    Render a rearrangement report as "key: value" lines

    Args:
        report: Report to render
        show_steps: Include one line per swap of the iterative procedure
        with_value: Include the n-dependent fields (W, normal value, bounds, corollaries)

    Returns:
        List of output lines; every number is an exact rational literal
    """
    lines = [f"word: {report.word}", f"normal: {report.normal_word}"]
    if with_value:
        lines += [
            f"n: {format_rational(report.n)}",
            f"W: {format_rational(report.W)}",
            f"normal_value: {format_rational(report.normal_value)}",
            f"C: {format_rational(report.c_direct)}",
        ]
    else:
        lines.append(f"C: {format_rational(report.c_iterative)}")

    lines.append(f"C_iterative: {format_rational(report.c_iterative)}")
    if report.c_sum is not None:
        lines.append(f"C_commutator_sum: {format_rational(report.c_sum)}")
    for description, value in report.term_breakdown:
        lines.append(f"  term {description} = {format_rational(value)}")

    if with_value:
        lines.append(f"bounds_ok: {_flag(report.bounds_ok)}")
        lines.append(f"corollary1: {report.corollary1.value}")
        lines.append(f"corollary2: {report.corollary2.value}")
        if report.corollary2 is not Verdict.NOT_APPLICABLE:
            left, right = corollary2_sides(report.word, report.n)
            lines.append(f"  corollary2 compares {format_rational(left)} < {format_rational(right)}")
        lines.append(f"n_even_integer: {_flag(report.n_is_even_integer)}")

    if show_steps:
        for index, step in enumerate(report.steps, start=1):
            lines.append(
                f"step {index}: {step.word_state} + {format_rational(step.accumulated_c)}"
                f" (delta {format_rational(step.delta)}, commutator {format_rational(step.commutator)})"
            )
    return lines
