"""Human-readable renderings: plain text and LaTeX, descending powers.

Payload dictionaries for JSON and MessagePack come from the ``to_dict``
methods of the rendered objects; this module only adds the bench payload.
"""

from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING, Iterable, Sequence

from .coeffs import FaulhaberCoeffs
from .polyforms import PolyForm
from .ratnum import format_rational

if TYPE_CHECKING:
    from .bench import BenchRow
    from .oracle import VerifyReport


S1_TEXT = "S_1(n)"
S1_LATEX = r"S_1(n)"


def _terms(form: PolyForm) -> list[tuple[Fraction, int]]:
    """(coefficient, exponent) pairs in display order."""
    if form.basis == "power":
        terms = [(value, j) for j, value in enumerate(form.coefficients, start=1)]
        return sorted(terms, key=lambda term: -term[1])
    if form.basis == "center":
        offset = 1 if form.p % 2 == 0 else 2
        terms = [(value, 2 * m + offset) for m, value in enumerate(form.coefficients)]
        terms.sort(key=lambda term: -term[1])
        if form.constant is not None:
            terms.append((form.constant, 0))
        return terms
    return [(value, j) for j, value in enumerate(form.coefficients)]


def _join(pieces: Iterable[tuple[Fraction, str]]) -> str:
    """Join signed pieces as ``a - b + c``; zero terms are dropped."""
    out = ""
    for value, body in pieces:
        if value == 0:
            continue
        if not out:
            out = f"-{body}" if value < 0 else body
        else:
            out += f" - {body}" if value < 0 else f" + {body}"
    return out or "0"


def _text_monomial(value: Fraction, variable: str, exponent: int) -> str:
    magnitude = format_rational(abs(value))
    if exponent == 0:
        return magnitude
    power = variable if exponent == 1 else f"{variable}^{exponent}"
    return power if abs(value) == 1 else f"{magnitude} {power}"


def _latex_fraction(value: Fraction) -> str:
    value = abs(value)
    if value.denominator == 1:
        return str(value.numerator)
    return rf"\frac{{{value.numerator}}}{{{value.denominator}}}"


def _latex_monomial(value: Fraction, variable: str, exponent: int, *, wrap: bool = False) -> str:
    if exponent == 0:
        return _latex_fraction(value)
    if exponent == 1:
        power = variable
    else:
        exp = str(exponent) if exponent < 10 else f"{{{exponent}}}"
        power = rf"\big( {variable} \big)^{exp}" if wrap else f"{variable}^{exp}"
    if abs(value) == 1:
        return power
    separator = " " if wrap else ""
    return f"{_latex_fraction(value)}{separator}{power}"


def polynomial_text(form: PolyForm) -> str:
    """Render ``form`` as one line of plain text.

    Examples:
        >>> from .polyforms import explicit_center_polynomial
        >>> polynomial_text(explicit_center_polynomial(1))
        'S_1(n) = 1/2 N^2 - 1/8'
        >>> polynomial_text(PolyForm(3, "s1", (Fraction(1),)))
        'S_3(n) = S_1(n)^2 [1]'
    """
    head = f"S_{form.p}(n) = "
    if form.basis == "s1":
        bracket = _join((value, _text_monomial(value, S1_TEXT, j)) for value, j in _terms(form))
        prefactor = "S_2(n)" if form.p % 2 == 0 else "S_1(n)^2"
        return f"{head}{prefactor} [{bracket}]"
    variable = "n" if form.basis == "power" else "N"
    return head + _join((value, _text_monomial(value, variable, exponent)) for value, exponent in _terms(form))


def polynomial_latex(form: PolyForm) -> str:
    r"""Render ``form`` as a LaTeX equation body.

    Examples:
        >>> from .polyforms import explicit_center_polynomial
        >>> polynomial_latex(explicit_center_polynomial(2))
        'S_{2}(n) = \\frac{1}{3}N^3 - \\frac{1}{12}N'
    """
    head = f"S_{{{form.p}}}(n) = "
    if form.basis == "s1":
        bracket = _join((value, _latex_monomial(value, S1_LATEX, j, wrap=True)) for value, j in _terms(form))
        prefactor = "S_2(n)" if form.p % 2 == 0 else r"\big( S_1(n) \big)^2"
        return rf"{head}{prefactor} \left[ {bracket} \right]"
    variable = "n" if form.basis == "power" else "N"
    return head + _join((value, _latex_monomial(value, variable, exponent)) for value, exponent in _terms(form))


def coeffs_lines(coeffs: FaulhaberCoeffs) -> list[str]:
    """``f_k .. f_0`` then ``c_p`` for odd powers, one assignment per line."""
    lines = [f"S_{coeffs.p}: parity {coeffs.parity}, k = {coeffs.k}"]
    for m in range(coeffs.k, -1, -1):
        lines.append(f"f_{m} = {format_rational(coeffs.f[m])}")
    if coeffs.constant is not None:
        lines.append(f"c_{coeffs.p} = {format_rational(coeffs.constant)}")
    return lines


def coeffs_text(coeffs: FaulhaberCoeffs) -> str:
    """Render ``coeffs_lines`` as a block of text.

    Examples:
        >>> from .coeffs import coeffs_by_recurrence
        >>> print(coeffs_text(coeffs_by_recurrence(1)))
        S_1: parity odd, k = 0
        f_0 = 1/2
        c_1 = -1/8
    """
    return "\n".join(coeffs_lines(coeffs))


def coeffs_latex(coeffs: FaulhaberCoeffs) -> str:
    r"""Render the coefficients as one LaTeX line separated by ``\quad``.

    Examples:
        >>> from .coeffs import coeffs_by_recurrence
        >>> coeffs_latex(coeffs_by_recurrence(1))
        'f_{0}^{(1)} = \\frac{1}{2}, \\quad c_{1} = -\\frac{1}{8}'
    """
    lines = []
    for m in range(coeffs.k, -1, -1):
        value = coeffs.f[m]
        sign = "-" if value < 0 else ""
        lines.append(rf"f_{{{m}}}^{{({coeffs.p})}} = {sign}{_latex_fraction(value)}")
    if coeffs.constant is not None:
        sign = "-" if coeffs.constant < 0 else ""
        lines.append(rf"c_{{{coeffs.p}}} = {sign}{_latex_fraction(coeffs.constant)}")
    return ", \\quad ".join(lines)


def _table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> list[str]:
    widths = [len(title) for title in header]
    for row in rows:
        widths = [max(width, len(cell)) for width, cell in zip(widths, row)]
    lines = ["  ".join(cell.ljust(width) for cell, width in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * width for width in widths))
    lines.extend("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in rows)
    return lines


def _latex_table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    lines = [r"\begin{tabular}{" + "l" * len(header) + "}", " & ".join(header) + r" \\", r"\hline"]
    lines.extend(" & ".join(row).replace("_", r"\_") + r" \\" for row in rows)
    lines.append(r"\end{tabular}")
    return "\n".join(lines)


def _failure_rows(report: "VerifyReport") -> list[list[str]]:
    return [
        [
            failure.check,
            str(failure.p),
            "-" if failure.point is None else str(failure.point),
            format_rational(failure.expected),
            format_rational(failure.actual),
        ]
        for failure in report.failures
    ]


_FAILURE_HEADER = ("check", "p", "point", "expected", "actual")


def report_summary(report: "VerifyReport") -> str:
    """One-line status with check and failure counts over the covered ranges."""
    status = "PASSED" if report.passed else "FAILED"
    return (
        f"{status}: {report.checks_run} checks, {len(report.failures)} failures "
        f"(p {report.p_range[0]}..{report.p_range[1]}, n {report.n_range[0]}..{report.n_range[1]}, "
        f"k {report.k_range[0]}..{report.k_range[1]})"
    )


def report_text(report: "VerifyReport") -> str:
    """Render a verification report as its summary line plus a failure table.

    The table is omitted when every check passed.
    """
    lines = [report_summary(report)]
    if report.failures:
        lines.append("")
        lines.extend(_table(_FAILURE_HEADER, _failure_rows(report)))
    return "\n".join(lines)


def report_latex(report: "VerifyReport") -> str:
    """Like ``report_text``, with the failure table as a LaTeX ``tabular``."""
    summary = report_summary(report)
    if not report.failures:
        return summary
    return summary + "\n\n" + _latex_table(_FAILURE_HEADER, _failure_rows(report))


_BENCH_HEADER = ("k", "p", "method", "seconds", "operations", "checksum")


def _bench_rows(rows: Sequence["BenchRow"]) -> list[list[str]]:
    return [[str(row.k), str(row.p), row.method, f"{row.seconds:.6f}", str(row.operations), row.checksum] for row in rows]


def bench_text(rows: Sequence["BenchRow"]) -> str:
    """Render bench rows as an aligned plain-text table, seconds to six places."""
    return "\n".join(_table(_BENCH_HEADER, _bench_rows(rows)))


def bench_latex(rows: Sequence["BenchRow"]) -> str:
    return _latex_table(_BENCH_HEADER, _bench_rows(rows))


def bench_payload(rows: Sequence["BenchRow"]) -> dict[str, object]:
    """Wrap the rows for the JSON and MessagePack serializers.

    Args:
        rows: Measurements as returned by ``run_bench``.

    Returns:
        ``{"rows": [...]}`` with each row from ``BenchRow.to_dict``.
    """
    return {"rows": [row.to_dict() for row in rows]}


def value_text(value: Fraction) -> str:
    """Render a rational as ``num/den``; integers drop the denominator.

    Examples:
        >>> value_text(Fraction(691, 16384))
        '691/16384'
    """
    return format_rational(value)


def value_latex(value: Fraction) -> str:
    r"""Render a signed rational as LaTeX.

    Examples:
        >>> value_latex(Fraction(-1, 2))
        '-\\frac{1}{2}'
    """
    return ("-" if value < 0 else "") + _latex_fraction(value)
