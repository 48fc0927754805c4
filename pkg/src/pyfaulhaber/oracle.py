"""Independent ground truth and the full cross-method verification sweep.

``brute_force_sum`` and ``interpolate_power_sum`` use integer arithmetic and
rational division only; neither touches Bernoulli numbers or the coefficient
methods, so a shared bug cannot hide itself.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
import logging
import math
from typing import Callable, Iterable, Mapping, Optional, Sequence

from . import coeffs as coeffs_module
from .bernoulli import bernoulli_number
from .coeffs import FaulhaberCoeffs, coeffs_by_recurrence, constant_term
from .linsys import (
    bareiss_determinant,
    build_delta,
    build_system,
    delta_closed_form,
    determinant,
    system_determinant,
)
from .polyforms import (
    PolyForm,
    center_to_power,
    center_to_s1,
    derivative,
    evaluate,
    power_basis_bernoulli,
    power_to_center,
    reflect,
    s1_to_center,
)
from .ratnum import binomial, double_factorial, format_rational


logger = logging.getLogger(__name__)


def brute_force_sum(p: int, n: int) -> int:
    """Return ``1**p + 2**p + ... + n**p`` by direct summation.

    Raises:
        ValueError: If ``p`` or ``n`` is negative.

    Examples:
        >>> brute_force_sum(10, 3)
        60074
        >>> brute_force_sum(1, 100)
        5050
        >>> brute_force_sum(7, 0)
        0
    """
    if p < 0 or n < 0:
        raise ValueError(f"brute force sum needs p >= 0 and n >= 0, got p={p}, n={n}")
    return sum(i ** p for i in range(1, n + 1))


def interpolate_power_sum(p: int) -> PolyForm:
    """Recover the power-basis form of ``S_p`` from ``S_p(0) .. S_p(p + 1)``.

    Uses Newton's forward-difference formula
    ``S(n) = sum_d (Delta**d S)(0) * C(n, d)`` and expands each ``C(n, d)`` from its
    falling factorial. Only integer values and rational division are involved.

    Examples:
        >>> interpolate_power_sum(2).coefficients
        (Fraction(1, 6), Fraction(1, 2), Fraction(1, 3))
    """
    if p < 0:
        raise ValueError(f"p must be non-negative, got {p}")
    values = [brute_force_sum(p, n) for n in range(p + 2)]
    leading_differences = []
    while values:
        leading_differences.append(values[0])
        values = [b - a for a, b in zip(values, values[1:])]

    expanded = [Fraction(0)] * (p + 2)
    falling = [1]
    for d, difference in enumerate(leading_differences):
        if difference:
            weight = Fraction(difference, math.factorial(d))
            for i, value in enumerate(falling):
                expanded[i] += weight * value
        # falling factorial n (n - 1) ... (n - d) for the next step
        shifted = [0] + falling
        for i, value in enumerate(falling):
            shifted[i] -= d * value
        falling = shifted
    if expanded[0] != 0:
        raise ArithmeticError(f"interpolated S_{p} has constant term {expanded[0]}")
    return PolyForm(p, "power", tuple(expanded[1:]))


def bernoulli_sum_identity(m: int) -> Fraction:
    """Return ``sum_{r=0}^{m} C(m + 1, r) B_r``; zero for every ``m >= 1``.

    Examples:
        >>> bernoulli_sum_identity(1)
        Fraction(0, 1)
    """
    if m < 1:
        raise ValueError(f"identity is stated for m >= 1, got {m}")
    return sum((binomial(m + 1, r) * bernoulli_number(r) for r in range(m + 1)), Fraction(0))


@dataclass(frozen=True)
class CheckFailure:
    """One failed comparison.

    ``point`` is the sample ``n`` for evaluation checks, the block or index
    ``j``/``m`` for matrix and coefficient checks, and ``None`` when the check
    compares a single value per ``p``.
    """

    check: str
    p: int
    point: Optional[int]
    expected: Fraction
    actual: Fraction

    def sort_key(self) -> tuple[str, int, int]:
        return (self.check, self.p, -1 if self.point is None else self.point)

    def to_dict(self) -> dict[str, object]:
        return {
            "check": self.check,
            "p": self.p,
            "point": self.point,
            "expected": format_rational(self.expected),
            "actual": format_rational(self.actual),
        }


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of ``run_verification``.

    Examples:
        >>> report = run_verification(1, 1, 1)
        >>> report.passed, report.checks_run > 0
        (True, True)
    """

    p_range: tuple[int, int]
    n_range: tuple[int, int]
    k_range: tuple[int, int]
    checks_run: int
    failures: tuple[CheckFailure, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.failures

    def failed_checks(self) -> tuple[str, ...]:
        """Return the distinct failing check names in report order."""
        return tuple(dict.fromkeys(failure.check for failure in self.failures))

    def to_dict(self) -> dict[str, object]:
        return {
            "passed": self.passed,
            "p_range": list(self.p_range),
            "n_range": list(self.n_range),
            "k_range": list(self.k_range),
            "checks_run": self.checks_run,
            "failures": [failure.to_dict() for failure in self.failures],
        }


@dataclass
class _Tally:
    checks_run: int = 0
    failures: list[CheckFailure] = field(default_factory=list)

    def compare(self, check: str, p: int, point: Optional[int], expected, actual) -> bool:
        self.checks_run += 1
        if expected == actual:
            return True
        self.failures.append(CheckFailure(check, p, point, Fraction(expected), Fraction(actual)))
        return False

    def compare_vectors(self, check: str, p: int, expected: Sequence, actual: Sequence) -> None:
        """Record one check; on mismatch report the first differing index."""
        self.checks_run += 1
        if tuple(expected) == tuple(actual):
            return
        for index, (want, got) in enumerate(zip(expected, actual)):
            if want != got:
                self.failures.append(CheckFailure(check, p, index, Fraction(want), Fraction(got)))
                return
        self.failures.append(CheckFailure(check, p, min(len(expected), len(actual)), Fraction(len(expected)), Fraction(len(actual))))

    def extend(self, other: "_Tally") -> None:
        self.checks_run += other.checks_run
        self.failures.extend(other.failures)


def _compare_coeffs(tally: _Tally, check: str, expected: FaulhaberCoeffs, actual: FaulhaberCoeffs) -> None:
    tally.checks_run += 1
    for m, (want, got) in enumerate(zip(expected.f, actual.f)):
        if want != got:
            tally.failures.append(CheckFailure(check, expected.p, m, want, got))
            return
    if len(expected.f) != len(actual.f):
        tally.failures.append(CheckFailure(check, expected.p, None, Fraction(len(expected.f)), Fraction(len(actual.f))))
    elif expected.constant != actual.constant:
        tally.failures.append(CheckFailure(check, expected.p, None, expected.constant or Fraction(0), actual.constant or Fraction(0)))


def _applicable(names: Iterable[str], p: int) -> list[str]:
    return [name for name in names if name != "derivative" or (p % 2 == 1 and p >= 3)]


def _check_power(p: int, n_max: int, methods: Mapping[str, Callable[[int], FaulhaberCoeffs]]) -> _Tally:
    tally = _Tally()
    interpolated = interpolate_power_sum(p)
    truth = power_to_center(interpolated).faulhaber

    for name in _applicable(methods, p):
        _compare_coeffs(tally, f"agreement:{name}", truth, methods[name](p))

    reference = coeffs_by_recurrence(p)
    center = PolyForm.from_coeffs(reference)
    power = power_basis_bernoulli(p)
    tally.compare("leading", p, None, Fraction(1, p + 1), reference.leading)
    tally.checks_run += 1
    for m, value in enumerate(reference.f):
        if value == 0:
            tally.failures.append(CheckFailure("nonzero", p, m, Fraction(1), value))
            break
    if reference.parity == "odd":
        tally.compare("constant", p, None, constant_term(reference.f), reference.constant)
        tally.compare("constant", p, 0, 0, evaluate(center, 0))

    tally.compare_vectors("power_vs_bernoulli", p, interpolated.coefficients, power.coefficients)
    tally.compare_vectors("round_trip:power", p, interpolated.coefficients, center_to_power(center).coefficients)
    tally.compare_vectors("round_trip:power", p, center.coefficients, power_to_center(power).coefficients)

    sign = 1 if (p + 1) % 2 == 0 else -1
    tally.compare_vectors("symmetry", p, (Fraction(0),) + tuple(sign * value for value in power.coefficients), reflect(power))

    forms = [("center", center), ("power", power)]
    if p >= 2:
        s1 = center_to_s1(center)
        forms.append(("s1", s1))
        round_trip = s1_to_center(s1)
        tally.compare_vectors("round_trip:s1", p, center.coefficients, round_trip.coefficients)
        if reference.parity == "odd":
            tally.compare("round_trip:s1", p, None, center.constant, round_trip.constant)

    if reference.parity == "odd" and p >= 3:
        lower = PolyForm.from_coeffs(coeffs_by_recurrence(p - 1))
        tally.compare_vectors("derivative", p, lower.coefficients, derivative(center).coefficients)
        k = reference.k
        b = center_to_s1(lower).coefficients
        c = forms[-1][1].coefficients
        for j in range(k):
            tally.compare("scaling", p, j, Fraction(4 * k + 2, 3 * j + 6) * b[j], c[j])

    running = 0
    for n in range(n_max + 1):
        if n:
            running += n ** p
        for basis, form in forms:
            tally.compare(f"evaluate:{basis}", p, n, running, evaluate(form, n))
    logger.debug("S_%d: %d checks, %d failures", p, tally.checks_run, len(tally.failures))
    return tally


def _check_determinants(k: int) -> _Tally:
    tally = _Tally()
    for parity, p in (("even", 2 * k), ("odd", 2 * k + 1)):
        top = build_delta(parity, k, k)
        tally.compare("delta_closed_form", p, k, delta_closed_form(parity, k), determinant(top))
        for j in range(1, k + 1):
            matrix = top if j == k else build_delta(parity, k, j)
            tally.compare("hessenberg_vs_bareiss", p, j, bareiss_determinant(matrix.rows), determinant(matrix))
        diagonal = build_system(parity, k).diagonal()
        for j in range(k + 1):
            if parity == "even":
                closed = Fraction(double_factorial(2 * k + 1), double_factorial(2 * k - 2 * j - 1))
            else:
                closed = Fraction(double_factorial(2 * k + 2), double_factorial(2 * k - 2 * j))
            product = math.prod(diagonal[k - a] for a in range(j + 1))
            tally.compare("system_determinant", p, j, closed, system_determinant(parity, k, j))
            tally.compare("system_determinant", p, j, product, system_determinant(parity, k, j))
    return tally


def _check_bernoulli(m_max: int) -> _Tally:
    tally = _Tally()
    for m in range(1, m_max + 1):
        tally.compare("bernoulli_recurrence", m, None, 0, bernoulli_sum_identity(m))
    return tally


def run_verification(
    p_max: int,
    n_max: int,
    k_max: int,
    *,
    workers: int = 1,
    methods: Optional[Mapping[str, Callable[[int], FaulhaberCoeffs]]] = None,
) -> VerifyReport:
    """Run every cross-check over the given ranges.

    Coefficient methods are compared against coefficients recovered from
    brute-force values, so a fault in one method fails only that method's
    ``agreement:<name>`` check. The evaluation, round-trip, symmetry,
    derivative and scaling checks run on the triangular-system coefficients;
    determinant checks run for ``k = 1 .. k_max`` in both parities.

    Args:
        p_max: Largest power checked; powers run from 1.
        n_max: Largest ``n`` for evaluation against brute force.
        k_max: Largest half degree for determinant checks.
        workers: Thread count; results do not depend on it.
        methods: Coefficient methods to cross-check; defaults to
            ``coeffs.COEFFICIENT_METHODS`` as registered at call time.

    Returns:
        A ``VerifyReport`` whose failures are ordered by check name, ``p`` and
        point.

    Raises:
        ValueError: If a range bound or ``workers`` is below one.
    """
    for name, value in (("p_max", p_max), ("n_max", n_max), ("k_max", k_max), ("workers", workers)):
        if value < 1:
            raise ValueError(f"{name} must be at least 1, got {value}")
    registry = dict(methods if methods is not None else coeffs_module.COEFFICIENT_METHODS)

    tasks: list[Callable[[], _Tally]] = [lambda p=p: _check_power(p, n_max, registry) for p in range(1, p_max + 1)]
    tasks += [lambda k=k: _check_determinants(k) for k in range(1, k_max + 1)]
    tasks.append(lambda: _check_bernoulli(max(p_max, 2 * k_max)))

    logger.info("running %d verification batches on %d worker(s)", len(tasks), workers)
    total = _Tally()
    if workers == 1:
        for task in tasks:
            total.extend(task())
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for result in pool.map(lambda task: task(), tasks):
                total.extend(result)

    failures = tuple(sorted(total.failures, key=CheckFailure.sort_key))
    if failures:
        logger.warning("verification found %d failure(s)", len(failures))
    return VerifyReport(
        p_range=(1, p_max),
        n_range=(0, n_max),
        k_range=(1, k_max),
        checks_run=total.checks_run,
        failures=failures,
    )
