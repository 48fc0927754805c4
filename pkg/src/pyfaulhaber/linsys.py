"""Triangular systems and structured determinants for the Faulhaber coefficients.

The system for ``p = 2k`` (parity ``"even"``) has one equation per power
``n**(2j)``:

    sum_{m=j}^{k} 4**(j - m) * C(2m + 1, 2j) * f_m = delta(j, k)

and the system for ``p = 2k + 1`` (parity ``"odd"``) uses ``C(2m + 2, 2j + 1)``.
Unknowns are stored in ascending order ``f_0 .. f_k``. The printed matrix form
lists unknowns as ``f_k .. f_0`` with equations reversed as well, so a leading
block of the printed matrix is the trailing block of the stored one, reversed.
Reversing rows and columns together keeps the determinant, and
``system_determinant`` multiplies diagonal entries starting from ``f_k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import math
from typing import Sequence

from .bernoulli import BernoulliCache, bernoulli_half
from .ratnum import binomial, double_factorial, power_of_four, tally


PARITIES = ("even", "odd")


class SingularSystemError(ValueError):
    """Raised when a triangular system has a zero diagonal entry."""


def _check_parity(parity: str) -> None:
    if parity not in PARITIES:
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")


def _system_entry(parity: str, j: int, m: int) -> Fraction:
    if m < j:
        return Fraction(0)
    tally(2)
    if parity == "even":
        return binomial(2 * m + 1, 2 * j) * power_of_four(j - m)
    return binomial(2 * m + 2, 2 * j + 1) * power_of_four(j - m)


@dataclass(frozen=True)
class TriangularSystem:
    """Triangular system whose solution is ``(f_0, ..., f_k)``.

    ``rows[j][m]`` is the coefficient of unknown ``f_m`` in equation ``j``; it
    is zero for ``m < j``. ``rhs[j]`` is one for ``j == k`` and zero otherwise.

    Examples:
        >>> system = build_system("even", 1)
        >>> system.rows
        ((Fraction(1, 1), Fraction(1, 4)), (Fraction(0, 1), Fraction(3, 1)))
        >>> system.rhs
        (Fraction(0, 1), Fraction(1, 1))
    """

    parity: str
    k: int
    rows: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]

    def __post_init__(self):
        _check_parity(self.parity)
        if len(self.rows) != self.order or len(self.rhs) != self.order:
            raise ValueError(f"system of order {self.order} needs {self.order} rows and right-hand sides")
        if any(len(row) != self.order for row in self.rows):
            raise ValueError("system rows must be square")

    @property
    def order(self) -> int:
        """Number of unknowns, ``k + 1``."""
        return self.k + 1

    def entry(self, j: int, m: int) -> Fraction:
        """Return the coefficient of ``f_m`` in equation ``j``."""
        return self.rows[j][m]

    def diagonal(self) -> tuple[Fraction, ...]:
        """Return the diagonal entries in unknown order ``f_0 .. f_k``."""
        return tuple(self.rows[index][index] for index in range(self.order))


@dataclass(frozen=True)
class HessenbergMatrix:
    """Square lower Hessenberg matrix: zero above the first superdiagonal.

    Examples:
        >>> build_delta("even", 5, 1).rows
        ((Fraction(165, 4),),)
    """

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        order = len(self.rows)
        for r, row in enumerate(self.rows):
            if len(row) != order:
                raise ValueError("Hessenberg matrix must be square")
            if any(value != 0 for value in row[r + 2:]):
                raise ValueError(f"row {r} has nonzero entries above the first superdiagonal")

    @property
    def order(self) -> int:
        return len(self.rows)


def build_system(parity: str, k: int) -> TriangularSystem:
    """Build the triangular system for ``p = 2k`` or ``p = 2k + 1``.

    Args:
        parity: ``"even"`` for ``S_{2k}``, ``"odd"`` for ``S_{2k+1}``.
        k: Non-negative half degree.

    Returns:
        A ``TriangularSystem`` of order ``k + 1``.

    Raises:
        ValueError: If ``k`` is negative or parity is unknown.

    Examples:
        >>> build_system("odd", 0).rows
        ((Fraction(2, 1),),)
        >>> build_system("even", 5).diagonal()[-1]
        Fraction(11, 1)
    """
    _check_parity(parity)
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    rows = tuple(
        tuple(_system_entry(parity, j, m) for m in range(k + 1))
        for j in range(k + 1)
    )
    rhs = tuple(Fraction(1 if j == k else 0) for j in range(k + 1))
    return TriangularSystem(parity=parity, k=k, rows=rows, rhs=rhs)


def solve_triangular(system: TriangularSystem) -> tuple[Fraction, ...]:
    """Solve a ``TriangularSystem`` exactly by back-substitution.

    Equation ``k`` holds only ``f_k``; each earlier equation ``j`` then has a
    single new unknown ``f_j``.

    Raises:
        SingularSystemError: If a diagonal entry is zero.

    Examples:
        >>> solve_triangular(build_system("even", 1))
        (Fraction(-1, 12), Fraction(1, 3))
    """
    order = system.order
    solution = [Fraction(0)] * order
    for j in range(order - 1, -1, -1):
        pivot = system.rows[j][j]
        if pivot == 0:
            raise SingularSystemError(f"zero diagonal entry in equation {j}")
        residual = system.rhs[j]
        row = system.rows[j]
        for m in range(j + 1, order):
            residual -= row[m] * solution[m]
        tally(2 * (order - j - 1) + 1)
        solution[j] = residual / pivot
    return tuple(solution)


def _delta_entry(parity: str, k: int, r: int, c: int) -> Fraction:
    # 1-based (r, c); column c carries C(2k + 1 - 2(c - 1), .) or C(2k + 2 - 2(c - 1), .)
    offset = r - c + 1
    if offset < 0:
        return Fraction(0)
    tally(2)
    top = 2 * k + 1 - 2 * (c - 1) if parity == "even" else 2 * k + 2 - 2 * (c - 1)
    return binomial(top, 2 * offset + 1) * power_of_four(-offset)


def build_delta(parity: str, k: int, j: int) -> HessenbergMatrix:
    """Build the order-``j`` matrix whose determinant is ``Delta_j`` (or ``Delta'_j``).

    Row ``r`` and column ``c`` (both 1-based) hold
    ``4**-(r - c + 1) * C(2k + 1 - 2(c - 1), 2(r - c) + 3)`` for even parity and
    the same with ``2k + 2`` for odd parity; entries right of the superdiagonal
    are zero.

    Raises:
        ValueError: Unless ``1 <= j <= k``.

    Examples:
        >>> build_delta("even", 5, 2).rows
        ((Fraction(165, 4), Fraction(9, 1)), (Fraction(231, 8), Fraction(21, 1)))
        >>> build_delta("odd", 5, 1).rows
        ((Fraction(55, 1),),)
    """
    _check_parity(parity)
    if not 1 <= j <= k:
        raise ValueError(f"Delta index must satisfy 1 <= j <= k, got j={j}, k={k}")
    rows = tuple(
        tuple(_delta_entry(parity, k, r, c) for c in range(1, j + 1))
        for r in range(1, j + 1)
    )
    return HessenbergMatrix(rows)


def determinant(matrix: HessenbergMatrix) -> Fraction:
    """Evaluate a lower Hessenberg determinant by the O(n^2) recurrence.

    With ``D_0 = 1`` and ``h`` the 1-based entries,

        D_i = sum_{r=1}^{i} (-1)**(i - r) * h[i][r] * h[r][r+1] ... h[i-1][i] * D_{r-1}

    which is the cofactor expansion of the last row, where every minor is again
    a leading Hessenberg block times a product of superdiagonal entries.

    Examples:
        >>> determinant(HessenbergMatrix(((Fraction(165, 4),),)))
        Fraction(165, 4)
    """
    rows = matrix.rows
    leading = [Fraction(1)]
    for i in range(1, matrix.order + 1):
        row = rows[i - 1]
        total = row[i - 1] * leading[i - 1]
        superdiagonal = Fraction(1)
        sign = 1
        for r in range(i - 1, 0, -1):
            superdiagonal *= rows[r - 1][r]
            sign = -sign
            total += sign * row[r - 1] * superdiagonal * leading[r - 1]
        tally(4 * (i - 1) + 1)
        leading.append(total)
    return leading[-1]


def bareiss_determinant(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Evaluate a square rational determinant by fraction-free elimination.

    Each row is scaled by the least common multiple of its denominators, the
    integer matrix is reduced with Bareiss' one-step division, and the result
    is divided back by the product of the row scales. Zero pivots are handled
    by row exchange.

    Examples:
        >>> bareiss_determinant([[Fraction(1, 2), 1], [3, 4]])
        Fraction(-1, 1)
        >>> bareiss_determinant([])
        Fraction(1, 1)
    """
    order = len(rows)
    if any(len(row) != order for row in rows):
        raise ValueError("determinant needs a square matrix")
    if order == 0:
        return Fraction(1)
    scale = 1
    matrix: list[list[int]] = []
    for row in rows:
        values = [Fraction(value) for value in row]
        row_scale = math.lcm(*(value.denominator for value in values))
        scale *= row_scale
        matrix.append([int(value * row_scale) for value in values])

    sign = 1
    previous = 1
    for step in range(order - 1):
        if matrix[step][step] == 0:
            swap = next((r for r in range(step + 1, order) if matrix[r][step] != 0), None)
            if swap is None:
                return Fraction(0)
            matrix[step], matrix[swap] = matrix[swap], matrix[step]
            sign = -sign
        pivot = matrix[step][step]
        for r in range(step + 1, order):
            for c in range(step + 1, order):
                matrix[r][c] = (matrix[r][c] * pivot - matrix[r][step] * matrix[step][c]) // previous
            matrix[r][step] = 0
        previous = pivot
    return Fraction(sign * matrix[order - 1][order - 1], scale)


def system_determinant(parity: str, k: int, j: int) -> int:
    """Return ``|M_j|``, the diagonal product over ``f_k .. f_{k-j}``.

    That is the leading ``j + 1`` block of the printed ``f_k .. f_0`` ordering.

    For even parity this is ``(2k + 1)!! / (2k - 2j - 1)!!``; for odd parity it
    is ``(2k + 2)!! / (2k - 2j)!!``.

    Raises:
        ValueError: Unless ``0 <= j <= k``.

    Examples:
        >>> system_determinant("even", 5, 5)
        10395
        >>> system_determinant("even", 5, 0)
        11
        >>> system_determinant("even", 3, 1)
        35
    """
    _check_parity(parity)
    if not 0 <= j <= k:
        raise ValueError(f"block index must satisfy 0 <= j <= k, got j={j}, k={k}")
    top = 2 * k + 1 if parity == "even" else 2 * k + 2
    return math.prod(top - 2 * a for a in range(j + 1))


def delta_closed_form(parity: str, k: int, cache: BernoulliCache | None = None) -> Fraction:
    """Return ``Delta_k`` (even) or ``Delta'_k`` (odd) from Bernoulli values.

    ``Delta_k = (-1)**k (2k + 1)!! B_2k(1/2)`` and
    ``Delta'_k = (-1)**k (2k + 1)(k + 1)(2k)!! B_2k(1/2)``.

    Examples:
        >>> delta_closed_form("even", 5)
        Fraction(804825, 1024)
    """
    _check_parity(parity)
    if k < 1:
        raise ValueError(f"closed form needs k >= 1, got {k}")
    half = bernoulli_half(2 * k, cache)
    sign = -1 if k % 2 else 1
    if parity == "even":
        return sign * double_factorial(2 * k + 1) * half
    return sign * (2 * k + 1) * (k + 1) * double_factorial(2 * k) * half
