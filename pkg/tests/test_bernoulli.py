from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest

from pyfaulhaber.bernoulli import BernoulliCache, bernoulli_half, bernoulli_number, default_cache
from pyfaulhaber.oracle import bernoulli_sum_identity

from .conftest import F10, F11


@pytest.mark.parametrize(
    ("r", "expected"),
    [
        (0, Fraction(1)),
        (1, Fraction(-1, 2)),
        (2, Fraction(1, 6)),
        (3, Fraction(0)),
        (4, Fraction(-1, 30)),
        (10, Fraction(5, 66)),
        (12, Fraction(-691, 2730)),
    ],
)
def test_bernoulli_numbers(r, expected):
    assert bernoulli_number(r) == expected


@pytest.mark.parametrize(
    ("r", "expected"),
    [(0, Fraction(1)), (1, Fraction(0)), (2, Fraction(-1, 12)), (10, Fraction(-2555, 33792))],
)
def test_bernoulli_half_values(r, expected):
    assert bernoulli_half(r) == expected


def test_half_values_match_faulhaber_constant_coefficients():
    assert bernoulli_half(10) == F10[0]
    assert Fraction(11, 2) * bernoulli_half(10) == F11[0]


@pytest.mark.parametrize("fn", [bernoulli_number, bernoulli_half])
def test_negative_index_is_rejected(fn):
    with pytest.raises(ValueError, match="non-negative"):
        fn(-1)


def test_odd_numbers_and_half_values_vanish_beyond_one():
    cache = BernoulliCache()
    for r in range(3, 60, 2):
        assert cache.number(r) == 0
        assert cache.half(r) == 0


def test_half_table_follows_number_table():
    cache = BernoulliCache()
    for r, value in enumerate(cache.numbers(40)):
        assert cache.half(r) == (Fraction(2) ** (1 - r) - 1) * value


@pytest.mark.parametrize("m", range(1, 41))
def test_generating_recurrence_closes(m):
    assert bernoulli_sum_identity(m) == 0


def test_cache_grows_densely_and_never_rewrites():
    cache = BernoulliCache()
    cache.number(6)
    assert len(cache) == 7
    before = cache.numbers(6)

    cache.number(30)

    assert len(cache) == 31
    assert cache.numbers(6) == before


def test_explicit_cache_leaves_default_cache_alone():
    cache = BernoulliCache()
    default_size = len(default_cache())

    bernoulli_number(70, cache)

    assert len(cache) == 71
    assert len(default_cache()) == default_size


def test_concurrent_readers_see_a_consistent_table():
    cache = BernoulliCache()
    expected = BernoulliCache().numbers(80)

    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(cache.number, range(80, -1, -1)))

    assert tuple(reversed(results)) == expected
