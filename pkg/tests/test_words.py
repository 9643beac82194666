from fractions import Fraction

import pytest

from src.core.affine import COLLATZ_PAIR, apply, power_closed
from src.core.words import (
    Block, CompositionWord, Letter, WordSyntaxError, evaluate_closed, evaluate_stepwise, evaluation_trace,
    format_word, index_sums, normalize_blocks, parse_word
)
from src.utils.sampling import random_affine_pair, random_positive_rational, random_word

E, O = Letter.FIRST, Letter.SECOND


def test_parse_word_blocks():
    word = parse_word("E^3 O^2 E^1")
    assert word.blocks == (Block(E, 3), Block(O, 2), Block(E, 1))


def test_parse_n22_word(n22_word):
    assert len(n22_word) == 7
    assert n22_word.second_block_count == 3


@pytest.mark.parametrize("text, position", [
    ("E^0 O^2", 2),
    ("E^-1", 2),
    ("E^3  O^2", 4),
    ("E3", 0),
    ("E^3 X^2", 4),
    ("E^3,O^2", 3),
])
def test_parse_word_errors(text, position):
    with pytest.raises(WordSyntaxError) as excinfo:
        parse_word(text)
    assert excinfo.value.position == position


def test_parse_word_generic_alphabet():
    word = parse_word("A^1 B^1 A^1 B^1", ("A", "B"))
    assert [block.letter for block in word.blocks] == [E, O, E, O]
    with pytest.raises(WordSyntaxError):
        parse_word("E^1", ("A", "B"))


def test_format_word():
    assert format_word(CompositionWord((Block(E, 3), Block(O, 2), Block(E, 1)))) == "E^3 O^2 E^1"
    assert format_word(CompositionWord((Block(O, 4),))) == "O^4"
    assert format_word(CompositionWord()) == ""


def test_parse_format_round_trip(rng):
    for _ in range(300):
        word = random_word(rng)
        text = format_word(word)
        assert parse_word(text) == word
        assert format_word(parse_word(text)) == text


def test_normalize_blocks():
    assert normalize_blocks([("E", 2), ("E", 3)]).blocks == (Block(E, 5),)
    assert normalize_blocks([("E", 1), ("O", 0), ("E", 4)]).blocks == (Block(E, 5),)
    assert normalize_blocks([("O", 2)]).blocks == (Block(O, 2),)
    assert normalize_blocks([("O", 0)]).is_identity


def test_adjacent_equal_letters_rejected_by_constructor():
    with pytest.raises(ValueError):
        CompositionWord((Block(E, 1), Block(E, 2)))


def _evaluate_raw(raw, n):
    value = Fraction(n)
    for letter, exponent in reversed(raw):
        value = apply(power_closed(COLLATZ_PAIR[0 if letter == "E" else 1], exponent), value)
    return value


def test_normalize_is_idempotent_and_preserves_value(rng):
    for _ in range(300):
        raw = [(rng.choice("EO"), rng.randint(0, 4)) for _ in range(rng.randint(0, 10))]
        word = normalize_blocks(raw)
        again = normalize_blocks([(block.letter, block.exponent) for block in word.blocks])
        assert again == word
        n = random_positive_rational(rng)
        assert evaluate_stepwise(word, COLLATZ_PAIR, n) == _evaluate_raw(raw, n)


def test_evaluate_examples(n22_word, n6_word):
    for evaluate in (evaluate_stepwise, evaluate_closed):
        assert evaluate(n6_word, COLLATZ_PAIR, 6) == 1
        assert evaluate(parse_word(""), COLLATZ_PAIR, 5) == 5
        assert evaluate(n22_word, COLLATZ_PAIR, 22) == 1
        assert evaluate(parse_word("O^2"), COLLATZ_PAIR, 1) == Fraction(7, 2)
        assert evaluate(parse_word("E^4"), COLLATZ_PAIR, 16) == 1


def test_closed_equals_stepwise(rng):
    for _ in range(10000):
        word = random_word(rng, max_blocks=15, max_exponent=6)
        n = random_positive_rational(rng)
        assert evaluate_closed(word, COLLATZ_PAIR, n) == evaluate_stepwise(word, COLLATZ_PAIR, n)


def test_closed_equals_stepwise_generic_pair(rng):
    for _ in range(300):
        pair = random_affine_pair(rng)
        word = random_word(rng, max_blocks=8, max_exponent=4, alphabet=("Q", "R"))
        n = random_positive_rational(rng)
        assert evaluate_closed(word, pair, n) == evaluate_stepwise(word, pair, n)


def test_evaluation_trace_follows_application_order(n6_word):
    trace = evaluation_trace(n6_word, COLLATZ_PAIR, 6)
    assert [value for _, value in trace] == [3, 8, 1]
    assert [block.letter for block, _ in trace] == [E, O, E]


def test_index_sums_n22(n22_word):
    sums = index_sums(n22_word)
    assert (sums.sigma_e, sums.sigma_o) == (7, 4)
    assert sums.zeta(1) == 3
    assert sums.zeta(2) == 1
    assert sums.gamma(1) == 0
    assert sums.gamma(2) == 1
    assert sums.trailing_e == 1
    assert sums.e_prefix(3) == 6


def test_index_sums_totals_match_blocks(rng):
    for _ in range(200):
        word = random_word(rng)
        if word.second_block_count < 1:
            continue
        sums = index_sums(word)
        assert sums.sigma_e == sum(sums.e) + sums.trailing_e
        assert sums.sigma_o == sum(sums.o)


def test_index_sums_out_of_range(n22_word):
    sums = index_sums(n22_word)
    with pytest.raises(IndexError):
        sums.zeta(3)
    with pytest.raises(IndexError):
        sums.gamma(0)
    with pytest.raises(ValueError):
        index_sums(parse_word("E^4"))
