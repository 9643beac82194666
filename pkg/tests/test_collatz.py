from fractions import Fraction

import pytest

from src.core.affine import COLLATZ_PAIR
from src.core.collatz import build_scan_record, partition_range, scan_range, t_step, trace_orbit
from src.core.rearrange import Verdict
from src.core.words import Letter, evaluate_stepwise


def test_t_step():
    assert t_step(6) == 3
    assert t_step(7) == 11
    assert t_step(1) == 2
    with pytest.raises(ValueError):
        t_step(0)


def test_trace_orbit_6():
    trace = trace_orbit(6, 1000)
    assert trace.values == (6, 3, 5, 8, 4, 2, 1)
    assert str(trace.word) == "E^3 O^2 E^1"
    assert trace.l == 1
    assert trace.reached_one
    assert trace.steps == 6


def test_trace_orbit_22():
    trace = trace_orbit(22, 1000)
    assert trace.values == (22, 11, 17, 26, 13, 20, 10, 5, 8, 4, 2, 1)
    assert str(trace.word) == "E^3 O^1 E^2 O^1 E^1 O^2 E^1"
    assert trace.l == 3


def test_trace_orbit_small_starts():
    assert str(trace_orbit(2, 1000).word) == "E^1"
    assert trace_orbit(2, 1000).l == 0
    one = trace_orbit(1, 1000)
    assert one.word.is_identity
    assert one.reached_one
    assert one.steps == 0


def test_step_cap_is_not_an_error():
    trace = trace_orbit(27, 10)
    assert not trace.reached_one
    assert trace.steps == 10
    assert len(trace.values) == 11
    assert evaluate_stepwise(trace.word, COLLATZ_PAIR, 27) == trace.final_value


def test_trace_is_deterministic():
    assert trace_orbit(97, 1000) == trace_orbit(97, 1000)


def test_word_faithfulness_and_shape():
    for n in range(1, 3001):
        trace = trace_orbit(n, 10 ** 6)
        assert trace.reached_one
        assert evaluate_stepwise(trace.word, COLLATZ_PAIR, n) == 1
        for previous, following in zip(trace.values, trace.values[1:]):
            assert following == t_step(previous)
        if n >= 2:
            assert trace.word.leftmost_letter is Letter.FIRST
            expected = Letter.FIRST if n % 2 == 0 else Letter.SECOND
            assert trace.word.rightmost_letter is expected


def test_scan_record_22():
    record = build_scan_record(22, 10000)
    assert (record.l, record.sigma_e, record.sigma_o) == (3, 7, 4)
    assert record.c == Fraction(201, 2048)
    assert record.corollary1 is Verdict.HOLDS
    assert record.corollary2 is Verdict.HOLDS


def test_scan_range_small():
    records = scan_range(2, 100, 10000)
    assert [record.n for record in records] == list(range(2, 101))
    assert all(record.reached_one for record in records)
    six = records[4]
    assert six.n == 6
    assert six.l == 1
    assert six.corollary1 is Verdict.NOT_APPLICABLE


def test_scan_range_rejects_bad_bounds():
    with pytest.raises(ValueError):
        scan_range(10, 5, 100)
    with pytest.raises(ValueError):
        scan_range(0, 5, 100)


def test_partition_range_covers_in_order():
    chunks = partition_range(3, 20, 7)
    assert chunks == [(3, 9), (10, 16), (17, 20)]


def test_parallel_scan_matches_serial():
    serial = scan_range(1, 500, 10000, jobs=1, chunk_size=64)
    parallel = scan_range(1, 500, 10000, jobs=4, chunk_size=64)
    assert serial == parallel


@pytest.mark.slow
def test_words_and_corollaries_up_to_1e5():
    records = scan_range(2, 10 ** 5, 10 ** 6, jobs=4)
    checked = 0
    for record in records:
        assert record.reached_one
        assert evaluate_stepwise(record.word, COLLATZ_PAIR, record.n) == 1
        if record.n % 2 == 0 and record.l > 1:
            assert record.corollary1 is Verdict.HOLDS
            assert record.corollary2 is Verdict.HOLDS
            assert 0 < record.c < 1
            checked += 1
    assert checked > 0
