import random
import logging
from fractions import Fraction
from typing import Tuple

from src.core.affine import AffineMap
from src.core.words import CompositionWord, Letter, normalize_blocks

# Set up logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)


def random_positive_rational(rng: random.Random, max_numerator: int = 10 ** 6, max_denominator: int = 1000) -> Fraction:
    return Fraction(rng.randint(1, max_numerator), rng.randint(1, max_denominator))


def random_rational(rng: random.Random, bound: int = 50, max_denominator: int = 12, nonzero: bool = False) -> Fraction:
    while True:
        value = Fraction(rng.randint(-bound, bound), rng.randint(1, max_denominator))
        if value != 0 or not nonzero:
            return value


def random_word(rng: random.Random, max_blocks: int = 15, max_exponent: int = 6,
                alphabet: Tuple[str, str] = ("E", "O")) -> CompositionWord:
    """
    A random alternating word of up to max_blocks blocks (possibly the identity)
    """
    count = rng.randint(0, max_blocks)
    letter = rng.choice([Letter.FIRST, Letter.SECOND])
    raw = []
    for _ in range(count):
        raw.append((letter, rng.randint(1, max_exponent)))
        letter = letter.other
    return normalize_blocks(raw, alphabet)


def random_theorem1_word(rng: random.Random, min_l: int = 2, max_l: int = 8, max_exponent: int = 6) -> CompositionWord:
    """
    A random E^e1 O^o1 ... O^ol E^e(l+1) word with l in [min_l, max_l]

    Args:
        rng: Random source
        min_l: Smallest number of O-blocks (at least 2)
        max_l: Largest number of O-blocks
        max_exponent: Largest exponent

    Returns:
        CompositionWord starting and ending with E
    """
    l = rng.randint(max(2, min_l), max(2, max_l))
    raw = []
    for _ in range(l):
        raw.append((Letter.FIRST, rng.randint(1, max_exponent)))
        raw.append((Letter.SECOND, rng.randint(1, max_exponent)))
    raw.append((Letter.FIRST, rng.randint(1, max_exponent)))
    return normalize_blocks(raw)


def random_affine_pair(rng: random.Random, labels: Tuple[str, str] = ("Q", "R")) -> Tuple[AffineMap, AffineMap]:
    first = AffineMap(random_rational(rng, 6, 5, nonzero=True), random_rational(rng), labels[0])
    second = AffineMap(random_rational(rng, 6, 5, nonzero=True), random_rational(rng), labels[1])
    return first, second
