import re
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from src.core.affine import COLLATZ_PAIR, AffineMap, apply, compose, identity_map, power_closed
from src.core.rationals import RationalLike, to_rational

# Set up logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

DEFAULT_ALPHABET: Tuple[str, str] = ("E", "O")

MapPair = Tuple[AffineMap, AffineMap]

_BLOCK = re.compile(r"([A-Za-z])\^(-?\d+)")


class Letter(Enum):
    """
    Position of a letter in the bound pair: FIRST is E by default, SECOND is O
    """
    FIRST = 0
    SECOND = 1

    @property
    def other(self) -> "Letter":
        return Letter.SECOND if self is Letter.FIRST else Letter.FIRST


class WordSyntaxError(ValueError):
    """
    Raised for malformed word text; position is a 0-based character offset
    """
    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


@dataclass(frozen=True)
class Block:
    letter: Letter
    exponent: int

    def __post_init__(self):
        if self.exponent < 1:
            raise ValueError(f"block exponent must be positive, got {self.exponent}")


@dataclass(frozen=True)
class CompositionWord:
    """
    Maximal blocks in composition order: the leftmost block is applied last

    An empty block tuple is the identity word.
    """
    blocks: Tuple[Block, ...] = ()
    alphabet: Tuple[str, str] = DEFAULT_ALPHABET

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        for left, right in zip(self.blocks, self.blocks[1:]):
            if left.letter is right.letter:
                raise ValueError("adjacent blocks must use different letters; use normalize_blocks")

    def __str__(self) -> str:
        return format_word(self)

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def is_identity(self) -> bool:
        return not self.blocks

    @property
    def second_block_count(self) -> int:
        """
        l, the number of second-letter (O) blocks
        """
        return sum(1 for block in self.blocks if block.letter is Letter.SECOND)

    @property
    def leftmost_letter(self) -> Optional[Letter]:
        return self.blocks[0].letter if self.blocks else None

    @property
    def rightmost_letter(self) -> Optional[Letter]:
        return self.blocks[-1].letter if self.blocks else None

    def letter_total(self, letter: Letter) -> int:
        return sum(block.exponent for block in self.blocks if block.letter is letter)

    def has_theorem1_shape(self) -> bool:
        """
        True for E^e1 O^o1 ... O^ol E^e(l+1) with l > 1
        """
        return (
            self.leftmost_letter is Letter.FIRST
            and self.rightmost_letter is Letter.FIRST
            and self.second_block_count > 1
        )


def _check_alphabet(alphabet: Sequence[str]) -> Tuple[str, str]:
    alphabet = tuple(alphabet)
    if len(alphabet) != 2 or alphabet[0] == alphabet[1]:
        raise ValueError(f"alphabet must hold two distinct letters, got {alphabet!r}")
    return alphabet


def normalize_blocks(raw: Iterable[Tuple[Union[Letter, str], int]],
                     alphabet: Sequence[str] = DEFAULT_ALPHABET) -> CompositionWord:
    """
    Build a word from raw (letter, exponent) pairs

    Zero exponents are dropped and adjacent equal letters are merged, so the
    result always satisfies the CompositionWord invariants.

    Args:
        raw: Pairs in composition order; letters as Letter or alphabet labels
        alphabet: Labels of the (first, second) letters

    Returns:
        Normalized word (possibly the identity word)
    """
    alphabet = _check_alphabet(alphabet)
    merged: List[List] = []
    for letter, exponent in raw:
        if isinstance(letter, str):
            if letter not in alphabet:
                raise ValueError(f"letter {letter!r} is not in alphabet {alphabet!r}")
            letter = Letter(alphabet.index(letter))
        if exponent < 0:
            raise ValueError(f"exponent must be nonnegative, got {exponent}")
        if exponent == 0:
            continue
        if merged and merged[-1][0] is letter:
            merged[-1][1] += exponent
        else:
            merged.append([letter, exponent])
    return CompositionWord(tuple(Block(letter, exponent) for letter, exponent in merged), alphabet)


def parse_word(text: str, alphabet: Sequence[str] = DEFAULT_ALPHABET) -> CompositionWord:
    """
    Parse "E^3 O^2 E^1" style text, written in composition order

    Grammar: word := block (SPACE block)*, block := LETTER "^" positive-integer.
    Blank text is the identity word.

    Args:
        text: Word text
        alphabet: Labels of the (first, second) letters

    Returns:
        Normalized word

    Raises:
        WordSyntaxError: on a grammar violation or a non-positive exponent
    """
    alphabet = _check_alphabet(alphabet)
    if text.strip() == "":
        return CompositionWord((), alphabet)

    raw = []
    position = 0
    while position < len(text):
        if raw:
            if text[position] != " ":
                raise WordSyntaxError("expected a single space between blocks", position)
            position += 1

        match = _BLOCK.match(text, position)
        if match is None:
            raise WordSyntaxError("expected a block of the form LETTER^EXPONENT", position)

        letter, exponent = match.group(1), int(match.group(2))
        if letter not in alphabet:
            raise WordSyntaxError(f"letter {letter!r} is not one of {'/'.join(alphabet)}", position)
        if exponent < 1:
            raise WordSyntaxError(f"exponent must be a positive integer, got {exponent}", match.start(2))

        raw.append((letter, exponent))
        position = match.end()

    return normalize_blocks(raw, alphabet)


def format_word(word: CompositionWord) -> str:
    """
    Render a word in the parse_word grammar; the identity word renders as ""
    """
    return " ".join(f"{word.alphabet[block.letter.value]}^{block.exponent}" for block in word.blocks)


def _map_for(block: Block, pair: MapPair) -> AffineMap:
    return pair[block.letter.value]


def evaluate_stepwise(word: CompositionWord, pair: MapPair, n: RationalLike) -> Fraction:
    """
    Ground-truth evaluation: apply the maps one at a time, rightmost block first

    Args:
        word: Composition word
        pair: (first, second) maps bound to the word's letters
        n: Starting value

    Returns:
        Exact value of the word at n
    """
    value = to_rational(n)
    for block in reversed(word.blocks):
        A = _map_for(block, pair)
        for _ in range(block.exponent):
            value = apply(A, value)
    return value


def word_to_map(word: CompositionWord, pair: MapPair = COLLATZ_PAIR) -> AffineMap:
    """
    Fold the word into one affine map using closed-form block powers
    """
    result = identity_map()
    for block in word.blocks:
        result = compose(result, power_closed(_map_for(block, pair), block.exponent))
    return result


def evaluate_closed(word: CompositionWord, pair: MapPair, n: RationalLike) -> Fraction:
    """
    Evaluate via closed-form block powers composed into a single map

    Args:
        word: Composition word
        pair: (first, second) maps bound to the word's letters
        n: Starting value

    Returns:
        Exact value, identical to evaluate_stepwise
    """
    return apply(word_to_map(word, pair), n)


def evaluation_trace(word: CompositionWord, pair: MapPair,
                     n: RationalLike) -> List[Tuple[Block, Fraction]]:
    """
    Value after each block, in application order (rightmost block first)

    Returns:
        List of (block, value after applying it)
    """
    trace = []
    value = to_rational(n)
    for block in reversed(word.blocks):
        value = apply(power_closed(_map_for(block, pair), block.exponent), value)
        trace.append((block, value))
    return trace


@dataclass(frozen=True)
class IndexSums:
    """
    Exponent sums of an E/O word

    e[j-1] is the E exponent immediately left of O-block j (0 if absent),
    o[j-1] the exponent of O-block j, and trailing_e the E exponent right of
    the last O-block.
    """
    sigma_e: int
    sigma_o: int
    e: Tuple[int, ...]
    o: Tuple[int, ...]
    trailing_e: int

    @property
    def l(self) -> int:
        return len(self.o)

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.l - 1:
            raise IndexError(f"index {i} outside 1..{self.l - 1}")

    def zeta(self, i: int) -> int:
        """
        e_(i+1) + ... + e_l; the trailing e_(l+1) is excluded
        """
        self._check_index(i)
        return sum(self.e[i:self.l])

    def gamma(self, i: int) -> int:
        """
        o_1 + ... + o_(i-1); gamma(1) = 0
        """
        self._check_index(i)
        return sum(self.o[:i - 1])

    def e_prefix(self, i: int) -> int:
        """
        e_1 + ... + e_i
        """
        return sum(self.e[:i])


def index_sums(word: CompositionWord) -> IndexSums:
    """
    Compute sigma_e, sigma_o and the per-block exponents behind zeta and gamma

    Args:
        word: Word with at least one second-letter (O) block

    Returns:
        IndexSums for the word

    Raises:
        ValueError: if the word has no O-block
    """
    if word.second_block_count < 1:
        raise ValueError("index sums need at least one O-block")

    e: List[int] = []
    o: List[int] = []
    pending_e = 0
    for block in word.blocks:
        if block.letter is Letter.FIRST:
            pending_e = block.exponent
        else:
            e.append(pending_e)
            o.append(block.exponent)
            pending_e = 0

    return IndexSums(
        sigma_e=word.letter_total(Letter.FIRST),
        sigma_o=word.letter_total(Letter.SECOND),
        e=tuple(e),
        o=tuple(o),
        trailing_e=pending_e,
    )
