import re
import logging
from fractions import Fraction
from typing import Tuple, Union

# Set up logging
logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
logger = logging.getLogger(__name__)

# Every numeric value in the package is a Fraction: canonical, arbitrary precision, no floats.
Rational = Fraction

RationalLike = Union[Fraction, int, str]

_LITERAL = re.compile(r"^(-?\d+)(?:/(\d+))?$")

_OPERATIONS = ("add", "sub", "mul", "div")


class RationalSyntaxError(ValueError):
    """
    Raised when a rational literal does not match the accepted format
    """
    def __init__(self, text: str, reason: str):
        self.text = text
        self.reason = reason
        super().__init__(f"invalid rational literal {text!r}: {reason}")


def parse_rational(text: str) -> Fraction:
    """
    Parse a rational literal such as "201/2048", "-4" or "22"

    Non-canonical input ("4/8") is accepted and canonicalized.

    Args:
        text: Literal text

    Returns:
        Canonical Fraction

    Raises:
        RationalSyntaxError: if the text is malformed or the denominator is zero
    """
    match = _LITERAL.match(text.strip()) if isinstance(text, str) else None
    if match is None:
        raise RationalSyntaxError(str(text), "expected [-]digits[/digits]")

    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise RationalSyntaxError(text, "denominator must be positive")

    return Fraction(numerator, denominator)


def format_rational(r: Fraction) -> str:
    """
    Render a rational as its canonical literal ("7/2", "-1", "0")

    Args:
        r: Value to render

    Returns:
        Literal accepted by parse_rational
    """
    r = to_rational(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def to_rational(value: RationalLike) -> Fraction:
    """
    Coerce an int, Fraction or literal string into a Fraction

    Args:
        value: Value to coerce

    Returns:
        Fraction equal to the value
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


def arith(a: RationalLike, op: str, b: RationalLike) -> Fraction:
    """
    Exact binary arithmetic

    Args:
        a: Left operand
        op: One of "add", "sub", "mul", "div"
        b: Right operand

    Returns:
        Canonical result

    Raises:
        ZeroDivisionError: when dividing by zero
        ValueError: for an unknown operation
    """
    a, b = to_rational(a), to_rational(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0:
            raise ZeroDivisionError(f"division of {format_rational(a)} by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}, expected one of {_OPERATIONS}")


def pow_int(r: RationalLike, k: int) -> Fraction:
    """
    Exact integer power; r^0 = 1 for every r

    Args:
        r: Base
        k: Integer exponent (may be negative)

    Returns:
        r raised to k

    Raises:
        ZeroDivisionError: for zero raised to a negative power
    """
    r = to_rational(r)
    if k < 0 and r == 0:
        raise ZeroDivisionError("zero cannot be raised to a negative power")
    return Fraction(r) ** int(k)


def floor_ceil(r: RationalLike) -> Tuple[int, int]:
    """
    Floor and ceiling of a rational, by integer division only

    Args:
        r: Value

    Returns:
        Tuple of (floor, ceil); both equal r when r is integral
    """
    r = to_rational(r)
    floor = r.numerator // r.denominator
    ceil = -((-r.numerator) // r.denominator)
    return floor, ceil


def compare(a: RationalLike, b: RationalLike) -> int:
    """
    Three-way comparison: the sign of a - b

    Returns:
        -1, 0 or 1
    """
    difference = to_rational(a) - to_rational(b)
    return (difference > 0) - (difference < 0)


def is_integral(r: RationalLike) -> bool:
    return to_rational(r).denominator == 1


def format_decimal_approx(r: RationalLike, digits: int = 6) -> str:
    """
    Approximate decimal rendering for display only

    The result is rounded half away from zero using integer arithmetic and is
    always prefixed with "≈" so it can never be read back as an exact value.

    Args:
        r: Value to render
        digits: Number of fractional digits

    Returns:
        Display string such as "≈0.098145"
    """
    r = to_rational(r)
    scale = 10 ** digits
    scaled = abs(r) * scale
    whole, remainder = divmod(scaled.numerator, scaled.denominator)
    if 2 * remainder >= scaled.denominator:
        whole += 1
    sign = "-" if r < 0 and whole != 0 else ""
    integer_part, fractional_part = divmod(whole, scale)
    if digits == 0:
        return f"≈{sign}{integer_part}"
    return f"≈{sign}{integer_part}.{fractional_part:0{digits}d}"
