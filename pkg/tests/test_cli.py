import io
import json

import pytest

from src.cli import EXIT_OK, EXIT_USAGE, run_command

N22_TEXT = "E^3 O^1 E^2 O^1 E^1 O^2 E^1"


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue().splitlines(), err.getvalue()


@pytest.fixture
def system_file(tmp_path):
    path = tmp_path / "system.json"
    path.write_text(json.dumps({
        "first_map": {"slope": "2", "intercept": "3", "label": "A"},
        "second_map": {"slope": "1/3", "intercept": "0", "label": "B"},
    }))
    return str(path)


def test_trace():
    code, lines, _ = _run("trace", "22")
    assert code == EXIT_OK
    assert f"word: {N22_TEXT}" in lines
    assert "l: 3" in lines
    assert "reached_one: true" in lines


def test_trace_step_cap():
    code, lines, _ = _run("trace", "27", "--step-cap", "5")
    assert code == EXIT_OK
    assert "reached_one: false" in lines


def test_word_eval():
    code, lines, _ = _run("word-eval", "E^3 O^2 E^1", "--n", "6", "--trace")
    assert code == EXIT_OK
    assert "stepwise: 1" in lines
    assert "closed: 1" in lines
    assert "  after E^1: 3" in lines


def test_rearrange_n22():
    code, lines, _ = _run("rearrange", N22_TEXT, "--n", "22", "--steps")
    assert code == EXIT_OK
    assert "W: 1" in lines
    assert "normal: E^7 O^4" in lines
    assert "normal_value: 1847/2048" in lines
    assert "C: 201/2048" in lines
    assert "C_commutator_sum: 201/2048" in lines
    assert "bounds_ok: true" in lines
    assert "corollary1: holds" in lines
    assert "corollary2: holds" in lines


def test_rearrange_without_n():
    code, lines, _ = _run("rearrange", N22_TEXT)
    assert code == EXIT_OK
    assert "C: 201/2048" in lines
    assert not any(line.startswith("W:") for line in lines)


def test_commutator():
    code, lines, _ = _run("commutator", "--a", "1", "--b", "3")
    assert code == EXIT_OK
    assert lines == ["7/16"]


def test_generic_system(system_file):
    code, lines, _ = _run("--system", system_file, "commutator", "--a", "1", "--b", "1")
    assert code == EXIT_OK
    assert lines == ["-2"]

    code, lines, _ = _run("--system", system_file, "rearrange", "A^1 B^1 A^1 B^1", "--n", "9")
    assert code == EXIT_OK
    assert "normal: A^2 B^2" in lines
    assert "W: 9" in lines
    assert "C: -4" in lines


@pytest.mark.parametrize("argv", [
    ["rearrange", "E^0 O^2"],
    ["word-eval", "E^1", "--n", "1/0"],
    ["word-eval", "E^1", "--n", "abc"],
    ["trace", "0"],
    ["frobnicate"],
    [],
    ["verify", "--from", "10", "--to", "5"],
    ["verify", "--from", "2", "--to", "5", "--random-words", "-3"],
])
def test_usage_errors(argv):
    code, _, err = _run(*argv)
    assert code == EXIT_USAGE
    assert err.startswith("error:")


def test_zero_slope_system_is_usage_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({
        "first_map": {"slope": "0", "intercept": "3", "label": "A"},
        "second_map": {"slope": "1/3", "intercept": "0", "label": "B"},
    }))
    code, _, _ = _run("--system", str(path), "commutator", "--a", "1", "--b", "1")
    assert code == EXIT_USAGE


def test_verify_passes_with_random_words():
    code, lines, _ = _run("verify", "--from", "2", "--to", "300", "--random-words", "50", "--seed", "7")
    assert code == EXIT_OK
    assert "corollary1_fails: 0" in lines
    assert "random_word_failures: 0" in lines
    assert lines[-1] == "result: pass"


def test_scan_to_stdout():
    code, lines, _ = _run("scan", "--from", "20", "--to", "22")
    assert code == EXIT_OK
    assert lines[0].startswith("n,reached_one,steps,word")
    assert lines[-1] == f"22,true,11,{N22_TEXT},3,7,4,201/2048,holds,holds"


@pytest.mark.slow
def test_scan_csv_is_identical_across_job_counts(tmp_path):
    serial = tmp_path / "serial.csv"
    parallel = tmp_path / "parallel.csv"
    assert _run("scan", "--from", "2", "--to", "10000", "--jobs", "1", "--csv", str(serial))[0] == EXIT_OK
    assert _run("scan", "--from", "2", "--to", "10000", "--jobs", "8", "--csv", str(parallel))[0] == EXIT_OK
    assert serial.read_bytes() == parallel.read_bytes()


def test_unwritable_csv_path_is_usage_error(tmp_path):
    code, _, err = _run("scan", "--from", "2", "--to", "5", "--csv", str(tmp_path))
    assert code == EXIT_USAGE
    assert err.startswith("error:")


def test_unreadable_system_path_is_usage_error(tmp_path):
    code, _, err = _run("--system", str(tmp_path), "commutator", "--a", "1", "--b", "1")
    assert code == EXIT_USAGE
    assert err.startswith("error:")


def test_config_that_is_not_a_mapping_falls_back(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("- 1\n- 2\n")
    code, lines, _ = _run("--config", str(path), "trace", "6")
    assert code == EXIT_OK
    assert "reached_one: true" in lines
