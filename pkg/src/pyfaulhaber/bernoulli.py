"""Bernoulli numbers and their values at one half.

Values follow the ``B_1 = -1/2`` convention. The alternate ``B_1 = +1/2``
convention is not supported; only ``B_1`` differs between the two and every
formula here assumes the negative sign.
"""

from __future__ import annotations

from fractions import Fraction
import logging
import threading

from .ratnum import binomial, tally


logger = logging.getLogger(__name__)


class BernoulliCache:
    """Densely populated, thread-safe table of ``B_r`` and ``B_r(1/2)``.

    Both tables grow from index zero up to the largest index requested.
    Growing never rewrites entries that are already present.

    Examples:
        >>> cache = BernoulliCache()
        >>> cache.number(4)
        Fraction(-1, 30)
        >>> cache.half(2)
        Fraction(-1, 12)
        >>> len(cache)
        5
    """

    def __init__(self):
        self._table: list[Fraction] = [Fraction(1)]
        self._half_table: list[Fraction] = [Fraction(1)]
        self._lock = threading.Lock()

    def __len__(self):
        return len(self._table)

    def ensure(self, r: int) -> None:
        """Populate both tables through index ``r``.

        Raises:
            ValueError: If ``r`` is negative.
        """
        if r < 0:
            raise ValueError(f"Bernoulli index must be non-negative, got {r}")
        if r < len(self._table):
            return
        with self._lock:
            start = len(self._table)
            for m in range(start, r + 1):
                value = self._next_number(m)
                # half entry first: readers test the length of _table without the lock
                self._half_table.append((Fraction(2, 1 << m) - 1) * value)
                self._table.append(value)
                tally(2)
            if len(self._table) > start:
                logger.debug("Bernoulli cache grown from %d to %d entries", start, r + 1)

    def _next_number(self, m: int) -> Fraction:
        # sum_{r=0}^{m} C(m+1, r) B_r = 0, solved for B_m
        if m >= 3 and m % 2 == 1:
            return Fraction(0)
        total = Fraction(0)
        for r in range(m):
            if r >= 3 and r % 2 == 1:
                continue
            total += binomial(m + 1, r) * self._table[r]
            tally(2)
        tally(1)
        return -total / (m + 1)

    def number(self, r: int) -> Fraction:
        """Return ``B_r``."""
        self.ensure(r)
        return self._table[r]

    def half(self, r: int) -> Fraction:
        """Return ``B_r(1/2) = (2**(1 - r) - 1) * B_r``."""
        self.ensure(r)
        return self._half_table[r]

    def numbers(self, r_max: int) -> tuple[Fraction, ...]:
        """Return ``(B_0, ..., B_{r_max})``."""
        self.ensure(r_max)
        return tuple(self._table[:r_max + 1])


_DEFAULT_CACHE = BernoulliCache()


def default_cache() -> BernoulliCache:
    """Return the process-wide cache used when no cache is passed."""
    return _DEFAULT_CACHE


def bernoulli_number(r: int, cache: BernoulliCache | None = None) -> Fraction:
    """Return the Bernoulli number ``B_r``.

    Args:
        r: Non-negative index.
        cache: Optional cache; the process-wide cache is used by default.

    Raises:
        ValueError: If ``r`` is negative.

    Examples:
        >>> bernoulli_number(1)
        Fraction(-1, 2)
        >>> bernoulli_number(3)
        Fraction(0, 1)
        >>> bernoulli_number(4)
        Fraction(-1, 30)
    """
    return (cache if cache is not None else _DEFAULT_CACHE).number(r)


def bernoulli_half(r: int, cache: BernoulliCache | None = None) -> Fraction:
    """Return ``B_r(1/2)``, the Bernoulli polynomial of degree ``r`` at one half.

    Examples:
        >>> bernoulli_half(0)
        Fraction(1, 1)
        >>> bernoulli_half(10)
        Fraction(-2555, 33792)
    """
    return (cache if cache is not None else _DEFAULT_CACHE).half(r)
