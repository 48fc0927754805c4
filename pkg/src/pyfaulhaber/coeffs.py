"""Faulhaber coefficients of ``S_p(n)`` in the variable ``N = n + 1/2``.

For ``p = 2k`` the power sum is the odd polynomial
``S_2k(n) = sum_m f_m N**(2m + 1)``; for ``p = 2k + 1`` it is the even polynomial
``S_2k+1(n) = c + sum_m f_m N**(2m + 2)``. Every computation path below returns
the same ``FaulhaberCoeffs`` value; the paths share no intermediate results so
they can be cross-checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import logging
from typing import Callable, Mapping, Optional, Sequence

from .bernoulli import BernoulliCache, bernoulli_half
from .linsys import build_delta, build_system, determinant, solve_triangular
from .ratnum import binomial, double_factorial, format_rational, parse_rational, power_of_four, tally


logger = logging.getLogger(__name__)


def split_degree(p: int) -> tuple[str, int]:
    """Return ``(parity, k)`` with ``p = 2k`` or ``p = 2k + 1``.

    Raises:
        ValueError: If ``p < 1``; ``S_0(n) = n`` has no form in ``N`` of the
            required parity.

    Examples:
        >>> split_degree(10)
        ('even', 5)
        >>> split_degree(11)
        ('odd', 5)
    """
    if p < 1:
        raise ValueError(f"Faulhaber coefficients need p >= 1, got p={p}")
    return ("even", p // 2) if p % 2 == 0 else ("odd", p // 2)


@dataclass(frozen=True)
class FaulhaberCoeffs:
    """Coefficient vector ``(f_0, ..., f_k)`` of ``S_p`` plus ``c_p`` for odd ``p``.

    Args:
        p: Power, at least one.
        f: Coefficients in ascending ``m``.
        constant: ``c_p``; required for odd ``p`` and forbidden for even ``p``.

    Examples:
        >>> coeffs = FaulhaberCoeffs(1, (Fraction(1, 2),), Fraction(-1, 8))
        >>> coeffs.parity, coeffs.k
        ('odd', 0)
        >>> coeffs.to_dict()
        {'p': 1, 'k': 0, 'parity': 'odd', 'f': ['1/2'], 'constant': '-1/8'}
    """

    p: int
    f: tuple[Fraction, ...]
    constant: Optional[Fraction] = None

    def __post_init__(self):
        parity, k = split_degree(self.p)
        object.__setattr__(self, "f", tuple(Fraction(value) for value in self.f))
        if len(self.f) != k + 1:
            raise ValueError(f"S_{self.p} needs {k + 1} coefficients, got {len(self.f)}")
        if parity == "odd" and self.constant is None:
            raise ValueError(f"S_{self.p} needs a constant term")
        if parity == "even" and self.constant is not None:
            raise ValueError(f"S_{self.p} has no constant term")
        if self.constant is not None:
            object.__setattr__(self, "constant", Fraction(self.constant))

    @property
    def parity(self) -> str:
        return split_degree(self.p)[0]

    @property
    def k(self) -> int:
        return split_degree(self.p)[1]

    @property
    def leading(self) -> Fraction:
        """``f_k``, always ``1/(p + 1)``."""
        return self.f[-1]

    def to_dict(self) -> dict[str, object]:
        """Return the JSON payload with rationals as ``"num/den"`` strings."""
        payload: dict[str, object] = {
            "p": self.p,
            "k": self.k,
            "parity": self.parity,
            "f": [format_rational(value) for value in self.f],
        }
        if self.constant is not None:
            payload["constant"] = format_rational(self.constant)
        return payload

    @classmethod
    def from_dict(cls, data: Mapping[str, object]) -> "FaulhaberCoeffs":
        """Rebuild coefficients from a ``to_dict`` payload.

        Examples:
            >>> FaulhaberCoeffs.from_dict({"p": 2, "f": ["-1/12", "1/3"]}).f
            (Fraction(-1, 12), Fraction(1, 3))
        """
        constant = data.get("constant")
        return cls(
            p=int(data["p"]),
            f=tuple(parse_rational(str(value)) for value in data["f"]),
            constant=parse_rational(str(constant)) if constant is not None else None,
        )


def constant_term(f: Sequence[Fraction]) -> Fraction:
    """Return ``c_2k+1 = -sum_m f_m / 4**(m + 1)``, forced by ``S_2k+1(0) = 0``.

    Examples:
        >>> constant_term([Fraction(1, 2)])
        Fraction(-1, 8)
        >>> constant_term([Fraction(-1, 8), Fraction(1, 4)])
        Fraction(1, 64)
    """
    total = Fraction(0)
    for m, value in enumerate(f):
        total -= value * power_of_four(-(m + 1))
    tally(2 * len(f))
    return total


def _finish(p: int, f: Sequence[Fraction]) -> FaulhaberCoeffs:
    if p % 2:
        return FaulhaberCoeffs(p, tuple(f), constant_term(f))
    return FaulhaberCoeffs(p, tuple(f))


def coeffs_by_recurrence(p: int) -> FaulhaberCoeffs:
    """Solve the triangular system for ``f_0 .. f_k``.

    Examples:
        >>> coeffs_by_recurrence(2).f
        (Fraction(-1, 12), Fraction(1, 3))
        >>> coeffs_by_recurrence(1).constant
        Fraction(-1, 8)
    """
    parity, k = split_degree(p)
    return _finish(p, solve_triangular(build_system(parity, k)))


def coeffs_by_determinant(p: int) -> FaulhaberCoeffs:
    """Compute each ``f_{k-j}`` on its own from Cramer's rule.

    ``f_{k-j} = (-1)**j (2k - 2j - 1)!! / (2k + 1)!! * Delta_j`` for even ``p`` and
    ``f_{k-j} = (-1)**j (2k - 2j)!! / (2k + 2)!! * Delta'_j`` for odd ``p``, with
    ``Delta_0 = 1``.

    Examples:
        >>> coeffs_by_determinant(10).f[4]
        Fraction(-5, 12)
    """
    parity, k = split_degree(p)
    f = [Fraction(0)] * (k + 1)
    for j in range(k + 1):
        delta = Fraction(1) if j == 0 else determinant(build_delta(parity, k, j))
        if parity == "even":
            factor = Fraction(double_factorial(2 * k - 2 * j - 1), double_factorial(2 * k + 1))
        else:
            factor = Fraction(double_factorial(2 * k - 2 * j), double_factorial(2 * k + 2))
        f[k - j] = factor * delta if j % 2 == 0 else -factor * delta
        tally(4)
    return _finish(p, f)


def _witmer_even(k: int) -> list[Fraction]:
    # rows[j] holds f^(2j); f_i^(2j) is taken as zero for i > j
    rows: list[list[Fraction]] = [[]]
    for kk in range(1, k + 1):
        weights = [binomial(2 * kk + 1, 2 * j) * power_of_four(j - kk) for j in range(kk)]
        tally(2 * kk)
        row = [Fraction(0)] * (kk + 1)
        row[kk] = Fraction(1, 2 * kk + 1)
        for i in range(kk):
            total = power_of_four(-kk) if i == 0 else Fraction(0)
            for j in range(max(i, 1), kk):
                total += weights[j] * rows[j][i]
            tally(2 * (kk - max(i, 1)) + 1)
            row[i] = -total / (2 * kk + 1)
        rows.append(row)
    return rows[k]


def _witmer_odd(k: int) -> tuple[list[Fraction], Fraction]:
    rows: list[list[Fraction]] = []
    constants: list[Fraction] = []
    for kk in range(k + 1):
        weights = [binomial(2 * kk + 2, 2 * j + 1) * power_of_four(j - kk) for j in range(kk)]
        tally(2 * kk)
        row = [Fraction(0)] * (kk + 1)
        row[kk] = Fraction(1, 2 * kk + 2)
        for i in range(kk):
            total = Fraction(0)
            for j in range(i, kk):
                total += weights[j] * rows[j][i]
            tally(2 * (kk - i) + 1)
            row[i] = -total / (2 * kk + 2)
        constant = power_of_four(-(kk + 1))
        for j in range(kk):
            constant += weights[j] * constants[j]
        tally(2 * kk + 1)
        rows.append(row)
        constants.append(-constant / (2 * kk + 2))
    return rows[k], constants[k]


def coeffs_by_witmer(p: int) -> FaulhaberCoeffs:
    """Build ``f^(p)`` from every lower power of the same parity.

    The odd case also carries the constant through its own recursion instead of
    summing the finished coefficients.

    Examples:
        >>> coeffs_by_witmer(3)
        FaulhaberCoeffs(p=3, f=(Fraction(-1, 8), Fraction(1, 4)), constant=Fraction(1, 64))
    """
    parity, k = split_degree(p)
    if parity == "even":
        return FaulhaberCoeffs(p, tuple(_witmer_even(k)))
    f, constant = _witmer_odd(k)
    return FaulhaberCoeffs(p, tuple(f), constant)


def coeffs_by_explicit(p: int, cache: BernoulliCache | None = None) -> FaulhaberCoeffs:
    """Read each coefficient off Bernoulli values at one half.

    ``f_m = C(2k, 2m) B_{2k-2m}(1/2) / (2m + 1)`` for ``p = 2k`` and
    ``f_m = C(2k + 1, 2m + 1) B_{2k-2m}(1/2) / (2m + 2)`` for ``p = 2k + 1``.

    Examples:
        >>> coeffs_by_explicit(11).f[0]
        Fraction(-2555, 6144)
    """
    parity, k = split_degree(p)
    f = []
    for m in range(k + 1):
        half = bernoulli_half(2 * k - 2 * m, cache)
        if parity == "even":
            f.append(binomial(2 * k, 2 * m) * half / (2 * m + 1))
        else:
            f.append(binomial(2 * k + 1, 2 * m + 1) * half / (2 * m + 2))
    tally(3 * (k + 1))
    return _finish(p, f)


def odd_from_even(even: FaulhaberCoeffs) -> FaulhaberCoeffs:
    """Turn ``f^(2k)`` into ``f^(2k+1)`` using ``f_m^(2k+1) = (2k + 1)/(2m + 2) f_m^(2k)``.

    Raises:
        ValueError: If the input has odd parity.

    Examples:
        >>> odd_from_even(FaulhaberCoeffs(2, (Fraction(-1, 12), Fraction(1, 3)))).f
        (Fraction(-1, 8), Fraction(1, 4))
    """
    if even.parity != "even":
        raise ValueError(f"odd_from_even needs an even power, got p={even.p}")
    k = even.k
    f = [Fraction(2 * k + 1, 2 * m + 2) * value for m, value in enumerate(even.f)]
    tally(len(f))
    return _finish(even.p + 1, f)


def coeffs_by_derivative(p: int) -> FaulhaberCoeffs:
    """Transfer the recurrence solution for ``p - 1`` to odd ``p >= 3``."""
    parity, _ = split_degree(p)
    if parity != "odd" or p < 3:
        raise ValueError(f"derivative transfer needs odd p >= 3, got p={p}")
    return odd_from_even(coeffs_by_recurrence(p - 1))


def coeffs_by_closed_form(p: int, cache: BernoulliCache | None = None) -> FaulhaberCoeffs:
    """Expand the closed polynomial formulas, constant included.

    ``S_2k = sum_j C(2k + 1, 2j) B_2j(1/2) N**(2k + 1 - 2j) / (2k + 1)`` and
    ``S_2k+1 = sum_j C(2k + 2, 2j) B_2j(1/2) (N**(2k + 2 - 2j) - 4**(j - k - 1)) / (2k + 2)``.

    Examples:
        >>> coeffs_by_closed_form(11).constant
        Fraction(691, 16384)
    """
    parity, k = split_degree(p)
    f = [Fraction(0)] * (k + 1)
    degree = 2 * k + 1 if parity == "even" else 2 * k + 2
    constant = Fraction(0)
    for j in range(k + 1):
        weight = binomial(degree, 2 * j) * bernoulli_half(2 * j, cache) / degree
        f[k - j] = weight
        if parity == "odd":
            constant -= weight * power_of_four(j - k - 1)
    tally(4 * (k + 1))
    if parity == "even":
        return FaulhaberCoeffs(p, tuple(f))
    return FaulhaberCoeffs(p, tuple(f), constant)


COEFFICIENT_METHODS: dict[str, Callable[[int], FaulhaberCoeffs]] = {
    "recurrence": coeffs_by_recurrence,
    "determinant": coeffs_by_determinant,
    "witmer": coeffs_by_witmer,
    "explicit": coeffs_by_explicit,
    "derivative": coeffs_by_derivative,
    "closed-form": coeffs_by_closed_form,
}

_BERNOULLI_METHODS = frozenset({"explicit", "closed-form"})


def applicable_methods(p: int) -> tuple[str, ...]:
    """Return the method names valid for ``p``, in registry order.

    Examples:
        >>> applicable_methods(2)
        ('recurrence', 'determinant', 'witmer', 'explicit', 'closed-form')
        >>> 'derivative' in applicable_methods(11)
        True
    """
    split_degree(p)
    return tuple(name for name in COEFFICIENT_METHODS if name != "derivative" or (p % 2 == 1 and p >= 3))


def compute(p: int, method: str = "recurrence", cache: BernoulliCache | None = None) -> FaulhaberCoeffs:
    """Compute ``FaulhaberCoeffs`` for ``p`` with the named method.

    There is no fallback: an inapplicable method raises.

    Args:
        p: Power, at least one.
        method: One of ``COEFFICIENT_METHODS``.
        cache: Bernoulli cache for the Bernoulli-based methods.

    Raises:
        ValueError: If the method is unknown or not applicable to ``p``.

    Examples:
        >>> compute(10, "witmer").f[-1]
        Fraction(1, 11)
    """
    if method not in COEFFICIENT_METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(COEFFICIENT_METHODS)}")
    if method not in applicable_methods(p):
        raise ValueError(f"method {method!r} does not apply to p={p}")
    logger.debug("computing S_%d coefficients with %s", p, method)
    if method in _BERNOULLI_METHODS:
        return COEFFICIENT_METHODS[method](p, cache)
    return COEFFICIENT_METHODS[method](p)
