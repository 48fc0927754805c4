"""``S_p(n)`` as a polynomial in three bases, with exact conversions.

* ``power``: ``S_p(n) = sum_{j=1}^{p+1} a_j n**j``; ``coefficients[j - 1] = a_j``.
* ``center``: the Faulhaber form in ``N = n + 1/2``; ``coefficients`` are
  ``f_0 .. f_k`` and ``constant`` is ``c_p`` for odd ``p``.
* ``s1``: ``S_2k = S_2(n) * sum_j b_j S_1(n)**j`` or
  ``S_2k+1 = S_1(n)**2 * sum_j c_j S_1(n)**j``; ``coefficients`` are the bracketed
  ``b_0 .. b_{k-1}`` or ``c_0 .. c_{k-1}``. The prefactor is implied by the basis.

Conversions to and from ``s1`` rest on ``N**2 = (1 + 8 S_1(n)) / 4``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import logging
from typing import Mapping, Optional, Sequence

from .bernoulli import BernoulliCache, bernoulli_number
from .coeffs import FaulhaberCoeffs, coeffs_by_closed_form, split_degree
from .ratnum import binomial, format_rational, parse_rational, power_of_four, tally


logger = logging.getLogger(__name__)

BASES = ("power", "center", "s1")
_HALF = Fraction(1, 2)


class InconsistentPolynomialError(ValueError):
    """Raised when a conversion meets terms a power sum cannot have."""


@dataclass(frozen=True)
class PolyForm:
    """Exact polynomial ``S_p(n)`` in one basis.

    Examples:
        >>> form = power_basis_bernoulli(2)
        >>> form.basis, form.coefficients
        ('power', (Fraction(1, 6), Fraction(1, 2), Fraction(1, 3)))
        >>> evaluate(form, 3)
        Fraction(14, 1)
    """

    p: int
    basis: str
    coefficients: tuple[Fraction, ...]
    constant: Optional[Fraction] = None

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"basis must be one of {', '.join(BASES)}, got {self.basis!r}")
        if self.p < 0:
            raise ValueError(f"p must be non-negative, got {self.p}")
        object.__setattr__(self, "coefficients", tuple(Fraction(value) for value in self.coefficients))
        if self.constant is not None:
            object.__setattr__(self, "constant", Fraction(self.constant))
        if self.basis == "power":
            if len(self.coefficients) != self.p + 1:
                raise ValueError(f"power basis of S_{self.p} needs {self.p + 1} coefficients")
            if self.constant is not None:
                raise ValueError("power basis has no constant slot")
        elif self.basis == "center":
            self.faulhaber
        else:
            _check_s1_degree(self.p)
            if len(self.coefficients) != self.p // 2:
                raise ValueError(f"s1 basis of S_{self.p} needs {self.p // 2} coefficients")
            if self.constant is not None:
                raise ValueError("s1 basis has no constant slot")

    @property
    def faulhaber(self) -> FaulhaberCoeffs:
        """The center-basis data as ``FaulhaberCoeffs``.

        Raises:
            TypeError: If the form is not in the center basis.
        """
        if self.basis != "center":
            raise TypeError(f"{self.basis} basis form has no Faulhaber coefficients")
        return FaulhaberCoeffs(self.p, self.coefficients, self.constant)

    @classmethod
    def from_coeffs(cls, coeffs: FaulhaberCoeffs) -> "PolyForm":
        """Wrap ``FaulhaberCoeffs`` as a center-basis form."""
        return cls(coeffs.p, "center", coeffs.f, coeffs.constant)

    def to_dict(self) -> dict[str, object]:
        """Return the JSON payload; coefficient order is the storage order.

        Examples:
            >>> PolyForm(1, "power", (Fraction(1, 2), Fraction(1, 2))).to_dict()
            {'p': 1, 'basis': 'power', 'coefficients': ['1/2', '1/2']}
        """
        payload: dict[str, object] = {
            "p": self.p,
            "basis": self.basis,
            "coefficients": [format_rational(value) for value in self.coefficients],
        }
        if self.constant is not None:
            payload["constant"] = format_rational(self.constant)
        return payload

    @classmethod
    def from_dict(cls, data: Mapping[str, object]) -> "PolyForm":
        """Rebuild a form from a ``to_dict`` payload."""
        constant = data.get("constant")
        return cls(
            p=int(data["p"]),
            basis=str(data["basis"]),
            coefficients=tuple(parse_rational(str(value)) for value in data["coefficients"]),
            constant=parse_rational(str(constant)) if constant is not None else None,
        )


def _check_s1_degree(p: int) -> None:
    if p < 2:
        raise ValueError(f"the s1 basis is defined for p >= 2, got p={p}")


def _require_basis(form: PolyForm, basis: str) -> None:
    if form.basis != basis:
        raise TypeError(f"expected a {basis} basis form, got {form.basis}")


def power_basis_bernoulli(p: int, cache: BernoulliCache | None = None) -> PolyForm:
    """Power-basis coefficients from the Bernoulli formula.

    ``a_j = C(p + 1, j) (-1)**(p + 1 - j) B_{p+1-j} / (p + 1)`` for ``j = 1 .. p + 1``.

    Raises:
        ValueError: If ``p`` is negative.

    Examples:
        >>> power_basis_bernoulli(0).coefficients
        (Fraction(1, 1),)
    """
    if p < 0:
        raise ValueError(f"p must be non-negative, got {p}")
    coefficients = []
    for j in range(1, p + 2):
        value = binomial(p + 1, j) * bernoulli_number(p + 1 - j, cache) / (p + 1)
        coefficients.append(-value if (p + 1 - j) % 2 else value)
    tally(2 * (p + 1))
    return PolyForm(p, "power", tuple(coefficients))


def explicit_center_polynomial(p: int, cache: BernoulliCache | None = None) -> PolyForm:
    """Center form straight from the closed polynomial formulas.

    Examples:
        >>> explicit_center_polynomial(1).to_dict()
        {'p': 1, 'basis': 'center', 'coefficients': ['1/2'], 'constant': '-1/8'}
    """
    return PolyForm.from_coeffs(coeffs_by_closed_form(p, cache))


def _center_terms(coeffs: FaulhaberCoeffs) -> list[tuple[int, Fraction]]:
    # (exponent of N, coefficient) pairs, constant included
    offset = 1 if coeffs.parity == "even" else 2
    terms = [(2 * m + offset, value) for m, value in enumerate(coeffs.f)]
    if coeffs.constant is not None:
        terms.append((0, coeffs.constant))
    return terms


def center_to_power(form: PolyForm) -> PolyForm:
    """Expand the center form in powers of ``n``.

    Raises:
        InconsistentPolynomialError: If the expansion has a nonzero constant term.

    Examples:
        >>> center_to_power(PolyForm(1, "center", (Fraction(1, 2),), Fraction(-1, 8))).coefficients
        (Fraction(1, 2), Fraction(1, 2))
    """
    _require_basis(form, "center")
    expanded = [Fraction(0)] * (form.p + 2)
    for exponent, value in _center_terms(form.faulhaber):
        # (n + 1/2)**e = sum_i C(e, i) n**i 2**(i - e)
        for i in range(exponent + 1):
            expanded[i] += value * binomial(exponent, i) * Fraction(1, 1 << (exponent - i))
        tally(3 * (exponent + 1))
    if expanded[0] != 0:
        raise InconsistentPolynomialError(f"S_{form.p} expands with constant term {format_rational(expanded[0])}")
    return PolyForm(form.p, "power", tuple(expanded[1:]))


def power_to_center(form: PolyForm) -> PolyForm:
    """Re-expand a power form in ``N`` by substituting ``n = N - 1/2``.

    Raises:
        InconsistentPolynomialError: If terms of the wrong parity in ``N`` remain.

    Examples:
        >>> power_to_center(power_basis_bernoulli(2)).coefficients
        (Fraction(-1, 12), Fraction(1, 3))
    """
    _require_basis(form, "power")
    parity, k = split_degree(form.p)
    expanded = [Fraction(0)] * (form.p + 2)
    for j, value in enumerate(form.coefficients, start=1):
        for i in range(j + 1):
            term = value * binomial(j, i) * Fraction(1, 1 << (j - i))
            expanded[i] += term if (j - i) % 2 == 0 else -term
        tally(3 * (j + 1))
    offset = 1 if parity == "even" else 2
    kept = {2 * m + offset for m in range(k + 1)}
    if parity == "odd":
        kept.add(0)
    stray = [exponent for exponent, value in enumerate(expanded) if value != 0 and exponent not in kept]
    if stray:
        raise InconsistentPolynomialError(f"S_{form.p} has N-exponents {stray} of the wrong parity")
    f = tuple(expanded[2 * m + offset] for m in range(k + 1))
    constant = expanded[0] if parity == "odd" else None
    return PolyForm(form.p, "center", f, constant)


def center_to_s1(form: PolyForm) -> PolyForm:
    """Convert a center form to the ``S_1`` basis.

    ``b_j = (3/2) 8**(j + 1) sum_{m=j+1}^{k} C(m, j + 1) f_m / 4**m`` and
    ``c_j = 8**(j + 2) sum_{m=j+1}^{k} C(m + 1, j + 2) f_m / 4**(m + 1)``;
    ``f_0`` never enters.

    Raises:
        ValueError: For ``p`` in ``{0, 1}``.

    Examples:
        >>> center_to_s1(PolyForm(3, "center", (Fraction(-1, 8), Fraction(1, 4)), Fraction(1, 64))).coefficients
        (Fraction(1, 1),)
    """
    _require_basis(form, "center")
    _check_s1_degree(form.p)
    coeffs = form.faulhaber
    k, f = coeffs.k, coeffs.f
    values = []
    for j in range(k):
        total = Fraction(0)
        for m in range(j + 1, k + 1):
            if coeffs.parity == "even":
                total += binomial(m, j + 1) * f[m] * power_of_four(-m)
            else:
                total += binomial(m + 1, j + 2) * f[m] * power_of_four(-(m + 1))
        tally(3 * (k - j) + 1)
        if coeffs.parity == "even":
            values.append(Fraction(3, 2) * (8 ** (j + 1)) * total)
        else:
            values.append((8 ** (j + 2)) * total)
    return PolyForm(form.p, "s1", tuple(values))


def s1_to_center(form: PolyForm) -> PolyForm:
    """Invert ``center_to_s1``, constant term included.

    ``f_m = (2/3) (-4)**m sum_{j=m}^{k} (-1)**j / 8**j C(j, m) b_{j-1}``,
    ``f_m = (-4)**(m + 1) sum_{j=m}^{k} (-1)**(j + 1) / 8**(j + 1) C(j + 1, m + 1) c_{j-1}``
    with ``b_{-1} = c_{-1} = 0``, and ``c_p = sum_j (-1)**j c_j / 8**(j + 2)``.

    Examples:
        >>> s1_to_center(PolyForm(3, "s1", (Fraction(1),))).to_dict()
        {'p': 3, 'basis': 'center', 'coefficients': ['-1/8', '1/4'], 'constant': '1/64'}
    """
    _require_basis(form, "s1")
    parity, k = split_degree(form.p)
    s1 = form.coefficients
    f = []
    for m in range(k + 1):
        total = Fraction(0)
        for j in range(max(m, 1), k + 1):
            if parity == "even":
                term = Fraction(binomial(j, m), 8 ** j) * s1[j - 1]
                total += term if j % 2 == 0 else -term
            else:
                term = Fraction(binomial(j + 1, m + 1), 8 ** (j + 1)) * s1[j - 1]
                total += term if (j + 1) % 2 == 0 else -term
        tally(3 * (k + 1 - max(m, 1)) + 1)
        if parity == "even":
            f.append(Fraction(2, 3) * ((-4) ** m) * total)
        else:
            f.append(((-4) ** (m + 1)) * total)
    constant = None
    if parity == "odd":
        constant = sum((Fraction(1 if j % 2 == 0 else -1, 8 ** (j + 2)) * value for j, value in enumerate(s1)), Fraction(0))
        tally(2 * len(s1))
    return PolyForm(form.p, "center", tuple(f), constant)


def convert(form: PolyForm, basis: str) -> PolyForm:
    """Convert ``form`` to ``basis``, routing through the center basis.

    Examples:
        >>> convert(power_basis_bernoulli(3), "s1").coefficients
        (Fraction(1, 1),)
    """
    if basis not in BASES:
        raise ValueError(f"basis must be one of {', '.join(BASES)}, got {basis!r}")
    if form.basis == basis:
        return form
    if basis == "s1":
        _check_s1_degree(form.p)
    logger.debug("converting S_%d from %s to %s basis", form.p, form.basis, basis)
    if form.basis == "power":
        center = power_to_center(form)
    elif form.basis == "s1":
        center = s1_to_center(form)
    else:
        center = form
    if basis == "center":
        return center
    if basis == "power":
        return center_to_power(center)
    s1 = center_to_s1(center)
    if s1_to_center(s1) != center:
        raise InconsistentPolynomialError(f"center form of S_{form.p} loses terms in the s1 basis")
    return s1


def _horner(values: Sequence[Fraction], x: Fraction) -> Fraction:
    total = Fraction(0)
    for value in reversed(values):
        total = total * x + value
    tally(2 * len(values))
    return total


def s1_value(n) -> Fraction:
    """``S_1(n) = n (n + 1) / 2`` as a polynomial in ``n``."""
    n = Fraction(n)
    return n * (n + 1) / 2


def s2_value(n) -> Fraction:
    """``S_2(n) = n (n + 1) (2n + 1) / 6`` as a polynomial in ``n``."""
    n = Fraction(n)
    return n * (n + 1) * (2 * n + 1) / 6


def evaluate(form: PolyForm, n) -> Fraction:
    """Evaluate ``form`` at any rational ``n`` by Horner's scheme.

    Examples:
        >>> evaluate(explicit_center_polynomial(11), Fraction(-1, 2))
        Fraction(691, 16384)
    """
    n = Fraction(n)
    if form.basis == "power":
        return n * _horner(form.coefficients, n)
    if form.basis == "center":
        center = n + _HALF
        square = center * center
        if form.p % 2 == 0:
            return center * _horner(form.coefficients, square)
        return square * _horner(form.coefficients, square) + form.constant
    s1 = s1_value(n)
    if form.p % 2 == 0:
        return s2_value(n) * _horner(form.coefficients, s1)
    return s1 * s1 * _horner(form.coefficients, s1)


def derivative(form: PolyForm) -> PolyForm:
    """Return ``S'_2k+1(n) / (2k + 1)``, the center form of ``S_2k``.

    Raises:
        ValueError: If the form is not an odd power with ``k >= 1``.

    Examples:
        >>> derivative(PolyForm(3, "center", (Fraction(-1, 8), Fraction(1, 4)), Fraction(1, 64))).coefficients
        (Fraction(-1, 12), Fraction(1, 3))
    """
    _require_basis(form, "center")
    parity, k = split_degree(form.p)
    if parity != "odd" or k < 1:
        raise ValueError(f"derivative needs an odd power p >= 3, got p={form.p}")
    f = tuple(Fraction(2 * m + 2, 2 * k + 1) * value for m, value in enumerate(form.coefficients))
    tally(len(f))
    return PolyForm(form.p - 1, "center", f)


def reflect(form: PolyForm) -> tuple[Fraction, ...]:
    """Compose a power form with ``n -> -(n + 1)``.

    Returns the coefficients of ``n**0 .. n**(p+1)``; the constant slot is kept
    so a corrupted input shows up as a nonzero first entry.

    Examples:
        >>> reflect(power_basis_bernoulli(1))
        (Fraction(0, 1), Fraction(1, 2), Fraction(1, 2))
    """
    _require_basis(form, "power")
    composed = [Fraction(0)] * (form.p + 2)
    for j, value in enumerate(form.coefficients, start=1):
        signed = -value if j % 2 else value
        for i in range(j + 1):
            composed[i] += signed * binomial(j, i)
        tally(2 * (j + 1))
    return tuple(composed)


def from_coefficients(p: int, basis: str, values: Sequence[Fraction], constant: Fraction | None = None) -> PolyForm:
    """Build a validated form from user-supplied coefficients.

    The form must vanish at ``n = 0``, keep the parity structure of the center
    basis, have leading power coefficient ``1/(p+1)`` and give ``S_p(1) = 1``.
    These are necessary conditions only; a form can pass them and still not
    be ``S_p`` once ``p >= 4``.

    Raises:
        InconsistentPolynomialError: If any of those conditions fails.

    Examples:
        >>> from_coefficients(2, "power", [Fraction(1, 3), 1, Fraction(2, 3)])
        Traceback (most recent call last):
        ...
        pyfaulhaber.polyforms.InconsistentPolynomialError: power form of S_2 has leading coefficient 2/3, expected 1/3
    """
    form = PolyForm(p, basis, tuple(values), constant)
    if basis == "center" and evaluate(form, 0) != 0:
        raise InconsistentPolynomialError(f"center form of S_{p} does not vanish at n = 0")
    power = form if p == 0 else center_to_power(convert(form, "center"))
    leading = power.coefficients[-1]
    if leading != Fraction(1, p + 1):
        raise InconsistentPolynomialError(
            f"{basis} form of S_{p} has leading coefficient {format_rational(leading)}, expected 1/{p + 1}"
        )
    at_one = sum(power.coefficients, Fraction(0))
    if at_one != 1:
        raise InconsistentPolynomialError(f"{basis} form gives S_{p}(1) = {format_rational(at_one)}, expected 1")
    return form
