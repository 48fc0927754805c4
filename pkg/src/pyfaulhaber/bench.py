"""Benchmark the coefficient methods: wall time, operation counts, checksums.

Each measurement starts from an empty Bernoulli cache so Bernoulli-based
methods pay for their table. Operation counts come from the ``tally`` calls in
the algorithm loops and do not depend on the machine.
"""

from __future__ import annotations

from dataclasses import dataclass
import hashlib
import logging
import time
from typing import Callable, Optional, Sequence, TypeVar

from .bernoulli import BernoulliCache
from .coeffs import COEFFICIENT_METHODS, FaulhaberCoeffs, applicable_methods, compute
from .linsys import PARITIES
from .ratnum import counting
from .serializers import JSONSerializer


logger = logging.getLogger(__name__)

T = TypeVar("T")


def seconds(func: Callable[[], T]) -> tuple[T, float]:
    """Return ``(result, elapsed_seconds)`` for ``func``."""
    started = time.perf_counter()
    result = func()
    return result, time.perf_counter() - started


def coefficient_checksum(coeffs: FaulhaberCoeffs) -> str:
    """First 16 hex digits of SHA-256 over the JSON payload of ``coeffs``.

    Examples:
        >>> from .coeffs import coeffs_by_recurrence, coeffs_by_witmer
        >>> coefficient_checksum(coeffs_by_recurrence(6)) == coefficient_checksum(coeffs_by_witmer(6))
        True
    """
    return hashlib.sha256(JSONSerializer().serialize(coeffs.to_dict())).hexdigest()[:16]


@dataclass(frozen=True)
class BenchRow:
    """One timed coefficient computation."""

    k: int
    p: int
    method: str
    seconds: float
    operations: int
    checksum: str

    def to_dict(self) -> dict[str, object]:
        return {
            "k": self.k,
            "p": self.p,
            "method": self.method,
            "seconds": round(self.seconds, 6),
            "operations": self.operations,
            "checksum": self.checksum,
        }


def sample_ks(k_max: int, geometric: bool = True) -> list[int]:
    """Return the half degrees to measure.

    Examples:
        >>> sample_ks(50)
        [1, 2, 4, 8, 16, 32, 50]
        >>> sample_ks(3, geometric=False)
        [1, 2, 3]
    """
    if k_max < 1:
        raise ValueError(f"k_max must be at least 1, got {k_max}")
    if not geometric:
        return list(range(1, k_max + 1))
    ks = []
    k = 1
    while k < k_max:
        ks.append(k)
        k *= 2
    ks.append(k_max)
    return ks


def measure(p: int, method: str) -> tuple[FaulhaberCoeffs, float, int]:
    """Compute ``S_p`` coefficients once with a cold Bernoulli cache."""
    cache = BernoulliCache()
    with counting() as counter:
        result, elapsed = seconds(lambda: compute(p, method, cache=cache))
    return result, elapsed, counter.operations


def run_bench(
    k_max: int,
    methods: Optional[Sequence[str]] = None,
    parity: str = "even",
    geometric: bool = True,
) -> list[BenchRow]:
    """Time every requested method for each sampled ``k``.

    Args:
        k_max: Largest half degree; ``p = 2k`` or ``p = 2k + 1``.
        methods: Method names; defaults to every method applicable to the parity.
        parity: ``"even"`` or ``"odd"``.
        geometric: Sample ``k = 1, 2, 4, ..., k_max`` instead of every ``k``.

    Returns:
        Rows sorted by ``k`` then method name.

    Raises:
        ValueError: For an unknown parity or method, or a method that does not
            apply to the parity.
    """
    if parity not in PARITIES:
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    ks = sample_ks(k_max, geometric)
    offset = 0 if parity == "even" else 1
    if methods is None:
        methods = applicable_methods(2 * ks[0] + offset)
    for method in methods:
        if method not in COEFFICIENT_METHODS:
            raise ValueError(f"unknown method {method!r}; choose from {', '.join(COEFFICIENT_METHODS)}")
        if method not in applicable_methods(2 + offset):
            raise ValueError(f"method {method!r} does not apply to {parity} powers")

    rows = []
    for k in ks:
        p = 2 * k + offset
        for method in sorted(set(methods)):
            coeffs, elapsed, operations = measure(p, method)
            row = BenchRow(k, p, method, elapsed, operations, coefficient_checksum(coeffs))
            logger.debug("bench k=%d %s: %.6fs, %d operations", k, method, elapsed, operations)
            rows.append(row)
    return rows


def mismatched_ks(rows: Sequence[BenchRow]) -> list[int]:
    """Return the ``k`` values whose rows disagree on the checksum."""
    seen: dict[int, set[str]] = {}
    for row in rows:
        seen.setdefault(row.k, set()).add(row.checksum)
    return sorted(k for k, checksums in seen.items() if len(checksums) > 1)
