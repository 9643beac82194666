import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Set, Tuple

from src.core.rationals import RationalLike, format_rational, pow_int, to_rational

# Set up logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AffineMap:
    """
    The map x -> slope*x + intercept over the rationals

    The label is display metadata only and takes no part in equality.
    """
    slope: Fraction
    intercept: Fraction
    label: str = field(default="Q", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "slope", to_rational(self.slope))
        object.__setattr__(self, "intercept", to_rational(self.intercept))
        if self.slope == 0:
            raise ValueError(f"affine map {self.label} must have a nonzero slope")
        if not (isinstance(self.label, str) and len(self.label) == 1 and self.label.isalpha()):
            raise ValueError(f"affine map label must be a single letter, got {self.label!r}")

    def __call__(self, x: RationalLike) -> Fraction:
        return apply(self, x)

    def describe(self) -> str:
        """
        Human-readable form such as "O(x) = 3/2*x + 1/2"
        """
        return f"{self.label}(x) = {format_rational(self.slope)}*x + {format_rational(self.intercept)}"


def halving_map() -> AffineMap:
    """
    E(n) = n/2
    """
    return AffineMap(Fraction(1, 2), Fraction(0), "E")


def odd_step_map() -> AffineMap:
    """
    O(n) = (3n+1)/2
    """
    return AffineMap(Fraction(3, 2), Fraction(1, 2), "O")


def identity_map(label: str = "I") -> AffineMap:
    return AffineMap(Fraction(1), Fraction(0), label)


E_MAP = halving_map()
O_MAP = odd_step_map()

# The Collatz pair, ordered (first letter, second letter)
COLLATZ_PAIR: Tuple[AffineMap, AffineMap] = (E_MAP, O_MAP)


def apply(A: AffineMap, x: RationalLike) -> Fraction:
    """
    Evaluate A at x exactly

    Args:
        A: Affine map
        x: Argument

    Returns:
        slope*x + intercept
    """
    return A.slope * to_rational(x) + A.intercept


def compose(A: AffineMap, B: AffineMap) -> AffineMap:
    """
    The composition A∘B (B applied first)

    Args:
        A: Outer map
        B: Inner map

    Returns:
        AffineMap with slope s_A*s_B and intercept s_A*b_B + b_A
    """
    return AffineMap(A.slope * B.slope, A.slope * B.intercept + A.intercept, A.label)


def compose_repeated(A: AffineMap, w: int) -> AffineMap:
    """
    w-fold composition by repeated compose; oracle for power_closed
    """
    result = identity_map(A.label)
    for _ in range(w):
        result = compose(A, result)
    return result


def power_closed(A: AffineMap, w: int) -> AffineMap:
    """
    A^w as a single affine map, via the geometric series

    For slope s != 1 the intercept is b*(s^w - 1)/(s - 1); for s = 1 it is b*w.
    For E and O this reproduces E^w(n) = n/2^w and O^w(n) = (3/2)^w (n+1) - 1.

    Args:
        A: Affine map
        w: Nonnegative exponent

    Returns:
        The map A^w (identity for w = 0)
    """
    if w < 0:
        raise ValueError(f"power exponent must be nonnegative, got {w}")
    if w == 0:
        return identity_map(A.label)

    slope_power = pow_int(A.slope, w)
    if A.slope == 1:
        intercept = A.intercept * w
    else:
        intercept = A.intercept * (slope_power - 1) / (A.slope - 1)
    return AffineMap(slope_power, intercept, A.label)


def commutator_constant(A: AffineMap, B: AffineMap) -> Fraction:
    """
    The constant value of [A,B](x) = A(B(x)) - B(A(x))

    The x terms cancel identically because slopes commute, leaving
    s_A*b_B + b_A - s_B*b_A - b_B.

    Args:
        A: First map
        B: Second map

    Returns:
        The commutator value
    """
    return A.slope * B.intercept + A.intercept - B.slope * A.intercept - B.intercept


def commutator_sampled(A: AffineMap, B: AffineMap, xs: Iterable[RationalLike]) -> Set[Fraction]:
    """
    Commutator values sampled at each x; a singleton for affine maps
    """
    return {apply(A, apply(B, x)) - apply(B, apply(A, x)) for x in xs}


def power_commutator_closed_form(a: int, b: int) -> Fraction:
    """
    Closed form of [O^a, E^b] = (3/2)^a (1 - 2^-b) + 2^-b - 1

    Args:
        a: Positive O exponent
        b: Positive E exponent

    Returns:
        The commutator value; positive for all a, b >= 1
    """
    half_b = pow_int(Fraction(1, 2), b)
    return pow_int(Fraction(3, 2), a) * (1 - half_b) + half_b - 1


def translate_response(A: AffineMap, w: int, H: RationalLike) -> Fraction:
    """
    Shift added by A^w when its argument is shifted by H

    A^w(x + H) = A^w(x) + slope^w * H for every x.

    Args:
        A: Affine map
        w: Exponent
        H: Argument shift

    Returns:
        slope(A)^w * H
    """
    return pow_int(A.slope, w) * to_rational(H)


def translate_through(blocks: Sequence[Tuple[AffineMap, int]], H: RationalLike) -> Fraction:
    """
    Propagate an argument shift H outward through A_1^w_1 ∘ ... ∘ A_m^w_m

    Blocks are in composition order, so the innermost (rightmost) block is
    crossed first.

    Args:
        blocks: (map, exponent) pairs in composition order
        H: Shift applied to the argument of the innermost block

    Returns:
        The resulting shift of the whole composition's value
    """
    shift = to_rational(H)
    for A, w in reversed(blocks):
        shift = translate_response(A, w, shift)
    return shift
