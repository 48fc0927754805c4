from fractions import Fraction

from pyfaulhaber.bench import BenchRow
from pyfaulhaber.coeffs import coeffs_by_recurrence
from pyfaulhaber.oracle import CheckFailure, VerifyReport
from pyfaulhaber.polyforms import PolyForm, center_to_s1, explicit_center_polynomial, power_basis_bernoulli
from pyfaulhaber.render import (
    bench_latex,
    bench_payload,
    bench_text,
    coeffs_latex,
    coeffs_text,
    polynomial_latex,
    polynomial_text,
    report_text,
    value_latex,
)


def test_center_text_and_latex_follow_descending_powers():
    form = explicit_center_polynomial(10)

    assert polynomial_text(form) == (
        "S_10(n) = 1/11 N^11 - 5/12 N^9 + 7/8 N^7 - 31/32 N^5 + 127/256 N^3 - 2555/33792 N"
    )
    assert polynomial_latex(form).startswith(r"S_{10}(n) = \frac{1}{11}N^{11} - \frac{5}{12}N^9 + \frac{7}{8}N^7")
    assert polynomial_latex(form).endswith(r"- \frac{2555}{33792}N")


def test_odd_center_rendering_ends_with_constant():
    text = polynomial_text(explicit_center_polynomial(11))

    assert text.startswith("S_11(n) = 1/12 N^12 - 11/24 N^10")
    assert text.endswith("- 2555/6144 N^2 + 691/16384")
    assert polynomial_text(explicit_center_polynomial(1)) == "S_1(n) = 1/2 N^2 - 1/8"


def test_s1_rendering_keeps_ascending_bracket():
    form = center_to_s1(explicit_center_polynomial(10))

    assert polynomial_text(form) == (
        "S_10(n) = S_2(n) [5/11 - 30/11 S_1(n) + 68/11 S_1(n)^2 - 80/11 S_1(n)^3 + 48/11 S_1(n)^4]"
    )
    latex = polynomial_latex(center_to_s1(explicit_center_polynomial(11)))
    assert latex.startswith(r"S_{11}(n) = \big( S_1(n) \big)^2 \left[ \frac{5}{3} - \frac{20}{3} S_1(n)")
    assert latex.endswith(r"+ \frac{16}{3} \big( S_1(n) \big)^4 \right]")


def test_power_rendering_and_unit_coefficients():
    assert polynomial_text(power_basis_bernoulli(0)) == "S_0(n) = n"
    assert polynomial_text(power_basis_bernoulli(3)) == "S_3(n) = 1/4 n^4 + 1/2 n^3 + 1/4 n^2"
    assert polynomial_latex(PolyForm(2, "center", (Fraction(-1), Fraction(1)))) == "S_{2}(n) = N^3 - N"


def test_coefficient_listing():
    text = coeffs_text(coeffs_by_recurrence(11))

    assert text.splitlines()[1] == "f_5 = 1/12"
    assert text.splitlines()[-1] == "c_11 = 691/16384"
    assert r"c_{11} = \frac{691}{16384}" in coeffs_latex(coeffs_by_recurrence(11))
    assert value_latex(Fraction(-7, 8)) == r"-\frac{7}{8}"


def test_report_text_lists_failures():
    report = VerifyReport(
        p_range=(1, 3),
        n_range=(0, 4),
        k_range=(1, 1),
        checks_run=12,
        failures=(CheckFailure("agreement:witmer", 2, 1, Fraction(1, 3), Fraction(4, 3)),),
    )

    lines = report_text(report).splitlines()

    assert lines[0] == "FAILED: 12 checks, 1 failures (p 1..3, n 0..4, k 1..1)"
    assert lines[2].split() == ["check", "p", "point", "expected", "actual"]
    assert lines[4].split() == ["agreement:witmer", "2", "1", "1/3", "4/3"]


def test_bench_renderings():
    rows = [BenchRow(1, 2, "explicit", 0.00125, 40, "abcd"), BenchRow(1, 2, "recurrence", 0.5, 12, "abcd")]

    assert bench_text(rows).splitlines()[2].split() == ["1", "2", "explicit", "0.001250", "40", "abcd"]
    assert r"\begin{tabular}{llllll}" in bench_latex(rows)
    assert bench_payload(rows)["rows"][1] == {
        "k": 1,
        "p": 2,
        "method": "recurrence",
        "seconds": 0.5,
        "operations": 12,
        "checksum": "abcd",
    }
