import logging
import multiprocessing
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Tuple

from tqdm import tqdm

from src.core.rearrange import Verdict, check_corollary1, check_corollary2, normal_form_value
from src.core.words import CompositionWord, Letter, normalize_blocks

# Set up logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

DEFAULT_STEP_CAP = 1_000_000
DEFAULT_CHUNK_SIZE = 2048


@dataclass(frozen=True)
class OrbitTrace:
    """
    Trajectory of start under the accelerated map, stopped at the first 1
    """
    start: int
    values: Tuple[int, ...]
    word: CompositionWord
    reached_one: bool
    steps: int
    step_cap: int

    @property
    def final_value(self) -> int:
        return self.values[-1]

    @property
    def l(self) -> int:
        return self.word.second_block_count


@dataclass(frozen=True)
class ScanRecord:
    n: int
    reached_one: bool
    steps: int
    word: CompositionWord
    l: int
    sigma_e: int
    sigma_o: int
    c: Fraction
    corollary1: Verdict
    corollary2: Verdict


def t_step(n: int) -> int:
    """
    One step of the accelerated Collatz map: n/2 if even, (3n+1)/2 if odd

    Args:
        n: Positive integer

    Returns:
        The next orbit value
    """
    if n < 1:
        raise ValueError(f"the accelerated map is defined on positive integers, got {n}")
    if n % 2 == 0:
        return n // 2
    return (3 * n + 1) // 2


def trace_orbit(n: int, step_cap: int = DEFAULT_STEP_CAP) -> OrbitTrace:
    """
    Iterate t_step from n until 1 is reached or step_cap steps were taken

    The word is built in composition order, so the first step taken is the
    rightmost block. Running out of steps is not an error: reached_one is
    False in that case.

    Args:
        n: Positive starting integer
        step_cap: Maximum number of steps

    Returns:
        OrbitTrace for n
    """
    if n < 1:
        raise ValueError(f"orbits start at a positive integer, got {n}")
    if step_cap < 1:
        raise ValueError(f"step cap must be positive, got {step_cap}")

    values = [n]
    applied: List[Tuple[Letter, int]] = []
    value = n
    while value != 1 and len(values) - 1 < step_cap:
        letter = Letter.FIRST if value % 2 == 0 else Letter.SECOND
        if applied and applied[-1][0] is letter:
            applied[-1] = (letter, applied[-1][1] + 1)
        else:
            applied.append((letter, 1))
        value = t_step(value)
        values.append(value)

    reached_one = value == 1
    if not reached_one:
        logger.warning(f"orbit of {n} did not reach 1 within {step_cap} steps")

    word = normalize_blocks(reversed(applied))
    return OrbitTrace(n, tuple(values), word, reached_one, len(values) - 1, step_cap)


def build_scan_record(n: int, step_cap: int = DEFAULT_STEP_CAP) -> ScanRecord:
    """
    Trace n and summarize its word, C and corollary verdicts

    Args:
        n: Positive integer
        step_cap: Orbit step cap

    Returns:
        ScanRecord for n
    """
    trace = trace_orbit(n, step_cap)
    word = trace.word
    final_value = Fraction(trace.final_value)

    # The traced word evaluates to the orbit's last value at n
    c = final_value - normal_form_value(word, n)

    return ScanRecord(
        n=n,
        reached_one=trace.reached_one,
        steps=trace.steps,
        word=word,
        l=trace.l,
        sigma_e=word.letter_total(Letter.FIRST),
        sigma_o=word.letter_total(Letter.SECOND),
        c=c,
        corollary1=check_corollary1(word, n, final_value),
        corollary2=check_corollary2(word, n, final_value),
    )


def _scan_chunk(bounds: Tuple[int, int, int]) -> List[ScanRecord]:
    lo, hi, step_cap = bounds
    return [build_scan_record(n, step_cap) for n in range(lo, hi + 1)]


def partition_range(lo: int, hi: int, chunk_size: int) -> List[Tuple[int, int]]:
    """
    Split [lo, hi] into contiguous ascending chunks of at most chunk_size
    """
    if chunk_size < 1:
        raise ValueError(f"chunk size must be positive, got {chunk_size}")
    return [(start, min(start + chunk_size - 1, hi)) for start in range(lo, hi + 1, chunk_size)]


def scan_range(lo: int, hi: int, step_cap: int = DEFAULT_STEP_CAP, jobs: int = 1,
               chunk_size: int = DEFAULT_CHUNK_SIZE, show_progress: bool = False) -> List[ScanRecord]:
    """
    One ScanRecord per n in [lo, hi], in ascending n

    Chunks are mapped over a process pool when jobs > 1; the pool's ordered
    imap keeps the merged output identical for every jobs value.

    Args:
        lo: First n (positive)
        hi: Last n (inclusive)
        step_cap: Orbit step cap
        jobs: Number of worker processes
        chunk_size: Numbers per work unit
        show_progress: Display a tqdm bar on stderr

    Returns:
        List of ScanRecord
    """
    if lo < 1 or hi < lo:
        raise ValueError(f"scan range must satisfy 1 <= lo <= hi, got [{lo}, {hi}]")
    if jobs < 1:
        raise ValueError(f"jobs must be positive, got {jobs}")

    chunks = [(start, end, step_cap) for start, end in partition_range(lo, hi, chunk_size)]
    logger.info(f"Scanning [{lo}, {hi}] in {len(chunks)} chunks with {jobs} job(s)")

    records: List[ScanRecord] = []
    with tqdm(total=hi - lo + 1, disable=not show_progress, unit="n") as progress:
        for chunk_records in _map_chunks(chunks, jobs):
            records.extend(chunk_records)
            progress.update(len(chunk_records))

    unreached = sum(1 for record in records if not record.reached_one)
    if unreached:
        logger.warning(f"{unreached} orbit(s) in [{lo}, {hi}] hit the step cap of {step_cap}")
    logger.info(f"Scan of [{lo}, {hi}] finished: {len(records)} records")
    return records


def _map_chunks(chunks: List[Tuple[int, int, int]], jobs: int) -> Iterator[List[ScanRecord]]:
    if jobs == 1 or len(chunks) == 1:
        for chunk in chunks:
            yield _scan_chunk(chunk)
        return

    with multiprocessing.Pool(processes=min(jobs, len(chunks))) as pool:
        for chunk_records in pool.imap(_scan_chunk, chunks):
            logger.debug(f"chunk of {len(chunk_records)} records merged")
            yield chunk_records
