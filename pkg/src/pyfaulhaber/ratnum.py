"""Exact integer and rational primitives shared by every formula.

Integers are Python ``int`` values and rationals are ``fractions.Fraction``
values. Both are immutable and always canonical: a ``Fraction`` keeps a positive
denominator coprime to its numerator after every operation, so equality is
structural.
"""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from fractions import Fraction
import math
import re
from typing import Iterator, Optional, Union


Rational = Fraction
RationalLike = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^\s*(?P<num>[+-]?\d+)\s*(?:/\s*(?P<den>[+-]?\d+)\s*)?$")


class ZeroDenominatorError(ZeroDivisionError):
    """Raised when a rational is built with a zero denominator."""


def binomial(n: int, r: int) -> int:
    """Return the binomial coefficient ``C(n, r)``.

    Out-of-range lower indices give zero so formula code can follow summation
    bounds literally.

    Args:
        n: Upper index, at least zero.
        r: Lower index, any integer.

    Returns:
        ``C(n, r)``, or ``0`` when ``r < 0`` or ``r > n``.

    Raises:
        ValueError: If ``n`` is negative.

    Examples:
        >>> binomial(11, 3)
        165
        >>> binomial(3, 7)
        0
    """
    if n < 0:
        raise ValueError(f"binomial upper index must be non-negative, got {n}")
    if r < 0 or r > n:
        return 0
    return math.comb(n, r)


def double_factorial(n: int) -> int:
    """Return ``n!!`` with the conventions ``0!! = (-1)!! = 1``.

    Examples:
        >>> double_factorial(11)
        10395
        >>> double_factorial(6)
        48
        >>> double_factorial(-1)
        1
    """
    if n < -1:
        raise ValueError(f"double factorial is defined for n >= -1, got {n}")
    if n <= 0:
        return 1
    return math.prod(range(n, 0, -2))


def rat(num: int, den: int = 1) -> Fraction:
    """Build a canonical rational ``num/den``.

    Raises:
        ZeroDenominatorError: If ``den`` is zero.

    Examples:
        >>> rat(2, 4)
        Fraction(1, 2)
        >>> rat(3, -6)
        Fraction(-1, 2)
        >>> rat(0, 5)
        Fraction(0, 1)
    """
    if den == 0:
        raise ZeroDenominatorError(f"zero denominator in rational {num}/{den}")
    return Fraction(num, den)


def power_of_four(exponent: int) -> Fraction:
    """Return ``4**exponent`` exactly for any integer exponent.

    Examples:
        >>> power_of_four(-2)
        Fraction(1, 16)
    """
    if exponent >= 0:
        return Fraction(1 << (2 * exponent))
    return Fraction(1, 1 << (-2 * exponent))


def format_rational(value: RationalLike) -> str:
    """Serialize a rational as ``"num/den"``, or ``"num"`` when ``den == 1``.

    Examples:
        >>> format_rational(Fraction(-2555, 33792))
        '-2555/33792'
        >>> format_rational(Fraction(6, 3))
        '2'
    """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse an integer literal or ``"a/b"`` into a canonical rational.

    Raises:
        ValueError: If the text is not an integer or integer ratio.
        ZeroDenominatorError: If the denominator is zero.

    Examples:
        >>> parse_rational("-1/2")
        Fraction(-1, 2)
        >>> parse_rational("60074")
        Fraction(60074, 1)
    """
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise ValueError(f"not a rational literal: {text!r}")
    den = match.group("den")
    return rat(int(match.group("num")), int(den) if den is not None else 1)


@dataclass
class OperationCounter:
    """Running count of exact-arithmetic operations.

    The count is machine independent: algorithm inner loops report their own
    work through ``tally``. A multiply-accumulate counts as two operations, and
    so does building a matrix entry or weight as a binomial scaled by a power
    of four.
    """

    operations: int = 0


_ACTIVE_COUNTER: ContextVar[Optional[OperationCounter]] = ContextVar("pyfaulhaber_operation_counter", default=None)


def tally(count: int = 1) -> None:
    """Add ``count`` operations to the active counter, if any."""
    counter = _ACTIVE_COUNTER.get()
    if counter is not None:
        counter.operations += count


@contextmanager
def counting() -> Iterator[OperationCounter]:
    """Count the operations tallied inside the ``with`` block.

    Examples:
        >>> with counting() as counter:
        ...     tally(3)
        >>> counter.operations
        3
    """
    counter = OperationCounter()
    token = _ACTIVE_COUNTER.set(counter)
    try:
        yield counter
    finally:
        _ACTIVE_COUNTER.reset(token)
