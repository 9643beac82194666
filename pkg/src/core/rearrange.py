import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, NamedTuple, Optional, Tuple

from src.core.affine import (
    COLLATZ_PAIR, E_MAP, O_MAP, commutator_constant, power_closed, translate_through
)
from src.core.rationals import RationalLike, floor_ceil, format_rational, pow_int, to_rational
from src.core.words import (
    Block, CompositionWord, Letter, MapPair, evaluate_closed, evaluate_stepwise, index_sums,
    normalize_blocks
)

# Set up logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)
THREE_HALVES = Fraction(3, 2)


class ShapeError(ValueError):
    """
    Raised when a word does not have the shape an operation requires
    """


class InconsistentCorrectionError(RuntimeError):
    """
    Raised when independent computations of C disagree
    """


class Verdict(Enum):
    HOLDS = "holds"
    NOT_APPLICABLE = "na"
    FAILS = "fails"


@dataclass(frozen=True)
class SwapStep:
    """
    One application of Q^j∘R^k = R^k∘Q^j + [Q^j,R^k] inside the word

    delta is the commutator term carried out to the word's value; the word
    before the swap equals word_state + accumulated_c.
    """
    word_state: CompositionWord
    accumulated_c: Fraction
    position: int
    moved_exponent: int
    crossed_exponent: int
    commutator: Fraction
    delta: Fraction


class IterativeResult(NamedTuple):
    normal_word: CompositionWord
    c: Fraction
    steps: List[SwapStep]


@dataclass
class RearrangementReport:
    """
    Everything known about word(n) = normal_form(n) + C
    """
    word: CompositionWord
    n: Fraction
    W: Fraction
    normal_word: CompositionWord
    normal_value: Fraction
    c_direct: Fraction
    c_iterative: Fraction
    c_sum: Optional[Fraction] = None
    term_breakdown: List[Tuple[str, Fraction]] = field(default_factory=list)
    bounds_ok: Optional[bool] = None
    corollary1: Verdict = Verdict.NOT_APPLICABLE
    corollary2: Verdict = Verdict.NOT_APPLICABLE
    n_is_even_integer: bool = False
    steps: List[SwapStep] = field(default_factory=list)


def _require_collatz_letters(word: CompositionWord) -> None:
    if word.alphabet != ("E", "O"):
        raise ShapeError(f"word must be over the E/O alphabet, got {'/'.join(word.alphabet)}")


def _require_theorem1_shape(word: CompositionWord) -> None:
    _require_collatz_letters(word)
    if word.is_identity:
        raise ShapeError("identity word has no E-block at either end")
    if word.leftmost_letter is not Letter.FIRST:
        raise ShapeError("word must start (leftmost) with an E-block")
    if word.rightmost_letter is not Letter.FIRST:
        raise ShapeError("word must end (rightmost) with an E-block")
    if word.second_block_count < 2:
        raise ShapeError(f"word needs l > 1 O-blocks, word has l={word.second_block_count}")


def normal_word_of(word: CompositionWord) -> CompositionWord:
    """
    first^(total first) ∘ second^(total second), e.g. "E^7 O^4"
    """
    return normalize_blocks(
        [(Letter.FIRST, word.letter_total(Letter.FIRST)), (Letter.SECOND, word.letter_total(Letter.SECOND))],
        word.alphabet,
    )


def normal_form_value(word: CompositionWord, n: RationalLike) -> Fraction:
    """
    (E^sigma_e ∘ O^sigma_o)(n) = (3^sigma_o (n+1) - 2^sigma_o) / 2^(sigma_o + sigma_e)

    Args:
        word: E/O word
        n: Argument

    Returns:
        Value of the normal form at n
    """
    _require_collatz_letters(word)
    sigma_e = word.letter_total(Letter.FIRST)
    sigma_o = word.letter_total(Letter.SECOND)
    n = to_rational(n)
    return Fraction(3 ** sigma_o * (n + 1) - 2 ** sigma_o, 2 ** (sigma_o + sigma_e))


def c_direct(word: CompositionWord, n: RationalLike) -> Fraction:
    """
    C = W - normal form value, with W the word's stepwise value at n
    """
    return evaluate_stepwise(word, COLLATZ_PAIR, n) - normal_form_value(word, n)


def c_theorem1_terms(word: CompositionWord) -> List[Tuple[str, Fraction]]:
    """
    The individual commutator terms whose sum is C

    The first term moves E^e(l+1) across O^sigma_o; term i moves
    E^zeta(i) across O^o_i, weighted by (1/2)^(e_1+...+e_i) (3/2)^gamma(i).

    Args:
        word: Word starting and ending with E, with l > 1

    Returns:
        List of (description, value)

    Raises:
        ShapeError: if the word does not start and end with E or has l < 2
    """
    _require_theorem1_shape(word)
    sums = index_sums(word)
    l = sums.l

    terms = []
    head_weight = pow_int(HALF, sums.e_prefix(l))
    head = head_weight * commutator_constant(power_closed(O_MAP, sums.sigma_o), power_closed(E_MAP, sums.trailing_e))
    terms.append((f"(1/2)^{sums.e_prefix(l)}*[O^{sums.sigma_o},E^{sums.trailing_e}]", head))

    for i in range(1, l):
        zeta = sums.zeta(i)
        gamma = sums.gamma(i)
        weight = pow_int(HALF, sums.e_prefix(i)) * pow_int(THREE_HALVES, gamma)
        value = weight * commutator_constant(power_closed(O_MAP, sums.o[i - 1]), power_closed(E_MAP, zeta))
        terms.append((f"(1/2)^{sums.e_prefix(i)}*(3/2)^{gamma}*[O^{sums.o[i - 1]},E^{zeta}]", value))

    return terms


def c_theorem1_sum(word: CompositionWord) -> Fraction:
    """
    C as a positive combination of commutators, with no reference to n
    """
    return sum((value for _, value in c_theorem1_terms(word)), Fraction(0))


def _next_swap(blocks: Tuple[Block, ...]) -> Optional[int]:
    # Rightmost (second, first) pair whose first block is not the final block,
    # otherwise the pair ending at the final block.
    last = len(blocks) - 1
    candidates = [
        i for i in range(last)
        if blocks[i].letter is Letter.SECOND and blocks[i + 1].letter is Letter.FIRST
    ]
    if not candidates:
        return None
    inner = [i for i in candidates if i + 1 < last]
    return inner[-1] if inner else candidates[-1]


def rearrange_iterative(word: CompositionWord, pair: MapPair = COLLATZ_PAIR) -> IterativeResult:
    """
    Move every first-letter block left of every second-letter block

    Each swap rewrites S^k∘F^j as F^j∘S^k - [F^j,S^k] and carries the
    constant out through the enclosing prefix, so that after the last swap
    word(x) = normal_word(x) + C for every x.

    Args:
        word: Word over the pair's two letters
        pair: (first, second) affine maps

    Returns:
        IterativeResult of (normal word, C, swap steps)
    """
    first, second = pair
    blocks = word.blocks
    accumulated = Fraction(0)
    steps: List[SwapStep] = []

    while True:
        position = _next_swap(blocks)
        if position is None:
            break

        crossed, moved = blocks[position], blocks[position + 1]
        commutator = commutator_constant(power_closed(first, moved.exponent),
                                         power_closed(second, crossed.exponent))
        prefix = [(pair[block.letter.value], block.exponent) for block in blocks[:position]]
        delta = translate_through(prefix, -commutator)
        accumulated += delta

        rewritten = list(blocks[:position]) + [moved, crossed] + list(blocks[position + 2:])
        state = normalize_blocks(((block.letter, block.exponent) for block in rewritten), word.alphabet)
        blocks = state.blocks

        steps.append(SwapStep(state, accumulated, position, moved.exponent, crossed.exponent, commutator, delta))
        logger.debug(f"swap at block {position}: {state} + {format_rational(accumulated)}")

    normal_word = CompositionWord(blocks, word.alphabet)
    return IterativeResult(normal_word, accumulated, steps)


def _corollary_applicable(word: CompositionWord, n: Fraction, value: Fraction) -> bool:
    return word.alphabet == ("E", "O") and word.has_theorem1_shape() and n > 0 and value == 1


def check_corollary1(word: CompositionWord, n: RationalLike, value: Optional[RationalLike] = None) -> Verdict:
    """
    Ceiling identity: word(n) = 1 = ceil(normal form value)

    Args:
        word: E/O word
        n: Argument
        value: Known value of the word at n, if already computed

    Returns:
        Verdict; NOT_APPLICABLE unless the word has the bounded shape and value 1
    """
    n = to_rational(n)
    value = evaluate_stepwise(word, COLLATZ_PAIR, n) if value is None else to_rational(value)
    if not _corollary_applicable(word, n, value):
        return Verdict.NOT_APPLICABLE
    _, ceil = floor_ceil(normal_form_value(word, n))
    return Verdict.HOLDS if ceil == 1 else Verdict.FAILS


def corollary2_sides(word: CompositionWord, n: RationalLike) -> Tuple[Fraction, Fraction]:
    """
    (n+1)/(2^sigma_e + 1) and (2/3)^sigma_o
    """
    n = to_rational(n)
    sigma_e = word.letter_total(Letter.FIRST)
    sigma_o = word.letter_total(Letter.SECOND)
    return (n + 1) / (2 ** sigma_e + 1), pow_int(Fraction(2, 3), sigma_o)


def check_corollary2(word: CompositionWord, n: RationalLike, value: Optional[RationalLike] = None) -> Verdict:
    """
    Inequality (n+1)/(2^sigma_e + 1) < (2/3)^sigma_o, compared exactly
    """
    n = to_rational(n)
    value = evaluate_stepwise(word, COLLATZ_PAIR, n) if value is None else to_rational(value)
    if not _corollary_applicable(word, n, value):
        return Verdict.NOT_APPLICABLE
    left, right = corollary2_sides(word, n)
    return Verdict.HOLDS if left < right else Verdict.FAILS


def build_report(word: CompositionWord, n: RationalLike, pair: MapPair = COLLATZ_PAIR) -> RearrangementReport:
    """
    Build a report for any word and pair

    The commutator-sum fields (c_sum, bounds_ok, corollaries) are only filled in for
    E/O words starting and ending with E that hold at least two O-blocks.

    Args:
        word: Composition word
        n: Argument
        pair: (first, second) maps

    Returns:
        RearrangementReport
    """
    n = to_rational(n)
    W = evaluate_stepwise(word, pair, n)
    result = rearrange_iterative(word, pair)

    is_collatz = tuple(pair) == COLLATZ_PAIR and word.alphabet == ("E", "O")
    if is_collatz:
        normal_value = normal_form_value(word, n)
        direct = c_direct(word, n)
    else:
        normal_value = evaluate_closed(result.normal_word, pair, n)
        direct = W - normal_value

    report = RearrangementReport(
        word=word,
        n=n,
        W=W,
        normal_word=result.normal_word,
        normal_value=normal_value,
        c_direct=direct,
        c_iterative=result.c,
        n_is_even_integer=(n.denominator == 1 and n.numerator % 2 == 0),
        steps=result.steps,
    )

    if direct != result.c:
        logger.error(f"C mismatch for {word} at n={format_rational(n)}: direct {direct}, iterative {result.c}")
        raise InconsistentCorrectionError(
            f"direct C {format_rational(direct)} != iterative C {format_rational(result.c)}"
        )

    if is_collatz and word.has_theorem1_shape():
        report.term_breakdown = c_theorem1_terms(word)
        report.c_sum = sum((value for _, value in report.term_breakdown), Fraction(0))
        if report.c_sum != direct:
            logger.error(f"C mismatch for {word}: direct {direct}, commutator sum {report.c_sum}")
            raise InconsistentCorrectionError(
                f"direct C {format_rational(direct)} != commutator-sum C {format_rational(report.c_sum)}"
            )
        report.bounds_ok = 0 < direct < W
        report.corollary1 = check_corollary1(word, n, W)
        report.corollary2 = check_corollary2(word, n, W)
    else:
        report.term_breakdown = [(f"swap {index + 1}", step.delta) for index, step in enumerate(result.steps)]

    return report


def check_bounds_theorem1(word: CompositionWord, n: RationalLike) -> RearrangementReport:
    """
    Verify 0 < C < W for an E...E word with l > 1 at a positive rational n

    All three computations of C are checked for exact agreement.

    Args:
        word: Word starting and ending with E, with l > 1
        n: Positive rational argument

    Returns:
        Filled RearrangementReport

    Raises:
        ShapeError: if the word does not start and end with E or has l < 2
        ValueError: if n is not positive
        InconsistentCorrectionError: if the C computations disagree
    """
    _require_theorem1_shape(word)
    n = to_rational(n)
    if n <= 0:
        raise ValueError(f"the C bounds need a positive rational n, got {format_rational(n)}")
    return build_report(word, n, COLLATZ_PAIR)
