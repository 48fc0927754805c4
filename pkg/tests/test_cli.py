import json

import pytest

from pyfaulhaber import coeffs
from pyfaulhaber.cli import CliConfig, build_parser, main, normalize_argv
from pyfaulhaber.serializers import MessagePackSerializer


def test_coeffs_json_by_determinant(run_cli):
    status, out, err = run_cli("coeffs", "--p", "10", "--method", "determinant", "--format", "json")

    assert status == 0
    payload = json.loads(out)
    assert payload["f"][-1] == "1/11"
    assert payload["f"][0] == "-2555/33792"
    assert list(payload) == ["p", "k", "parity", "f"]
    assert err == ""


def test_coeffs_derivative_includes_constant(run_cli):
    status, out, _ = run_cli("coeffs", "--p", "11", "--method", "derivative", "--format", "json")

    assert status == 0
    assert json.loads(out)["constant"] == "691/16384"


@pytest.mark.parametrize(
    "argv",
    [
        ("coeffs", "--p", "0"),
        ("coeffs", "--p", "10", "--method", "derivative"),
        ("coeffs", "--p", "3", "--method", "guess"),
        ("poly", "--p", "1", "--basis", "s1"),
        ("eval", "--p", "2", "--n", "1/0"),
        ("eval", "--p", "2", "--n", "half"),
        ("verify", "--p-max", "0"),
        ("bench", "--k-max", "2", "--methods", "derivative"),
    ],
)
def test_usage_errors_exit_2_without_stdout(run_cli, argv):
    status, out, err = run_cli(*argv)

    assert status == 2
    assert out == ""
    assert "error:" in err


def test_json_output_is_byte_identical_across_runs(run_cli):
    first = run_cli("poly", "--p", "11", "--basis", "power", "--format", "json")
    second = run_cli("poly", "--p", "11", "--basis", "power", "--format", "json")

    assert first == second
    assert first[1].endswith("}\n")


def test_poly_s1_text(run_cli):
    status, out, _ = run_cli("poly", "--p", "10", "--basis", "s1", "--format", "text")

    assert status == 0
    for value in ("5/11", "- 30/11", "+ 68/11", "- 80/11", "+ 48/11"):
        assert value in out


def test_poly_center_p1_text(run_cli):
    assert run_cli("poly", "--p", "1", "--basis", "center") == (0, "S_1(n) = 1/2 N^2 - 1/8\n", "")


def test_poly_closed_form_latex(run_cli):
    status, out, _ = run_cli("poly", "--p", "11", "--method", "closed-form", "--format", "latex")

    assert status == 0
    assert out.startswith(r"S_{11}(n) = \frac{1}{12}N^{12} - \frac{11}{24}N^{10}")
    assert out.rstrip().endswith(r"+ \frac{691}{16384}")


@pytest.mark.parametrize("method", ["determinant", "witmer", "closed-form"])
def test_poly_power_basis_with_method_matches_bernoulli_form(run_cli, method):
    expected = run_cli("poly", "--p", "10", "--basis", "power", "--format", "json")

    assert run_cli("poly", "--p", "10", "--basis", "power", "--method", method, "--format", "json") == expected


def test_poly_power_basis_uses_the_named_method(run_cli, monkeypatch):
    calls = []
    original = coeffs.COEFFICIENT_METHODS["witmer"]

    def recording(p):
        calls.append(p)
        return original(p)

    monkeypatch.setitem(coeffs.COEFFICIENT_METHODS, "witmer", recording)

    status, out, _ = run_cli("eval", "--p", "6", "--n", "4", "--basis", "power", "--method", "witmer")

    assert (status, out) == (0, "4890\n")
    assert calls == [6]


def test_power_basis_with_derivative_method_needs_odd_p(run_cli):
    assert run_cli("poly", "--p", "11", "--basis", "power", "--method", "derivative")[0] == 0
    status, out, err = run_cli("poly", "--p", "10", "--basis", "power", "--method", "derivative")

    assert (status, out) == (2, "")
    assert "derivative" in err


def test_method_is_rejected_for_p0(run_cli):
    status, out, err = run_cli("eval", "--p", "0", "--n", "12", "--basis", "power", "--method", "recurrence")

    assert (status, out) == (2, "")
    assert "p=0" in err


@pytest.mark.parametrize(
    ("argv", "expected"),
    [
        (("eval", "--p", "10", "--n", "3"), "60074"),
        (("eval", "--p", "11", "--n", "-1/2"), "691/16384"),
        (("eval", "--p", "5", "--n", "0"), "0"),
        (("eval", "--p", "11", "--n", "-1/2", "--basis", "s1"), "691/16384"),
        (("eval", "--p", "0", "--n", "12", "--basis", "power"), "12"),
    ],
)
def test_eval(run_cli, argv, expected):
    assert run_cli(*argv) == (0, expected + "\n", "")


def test_eval_json_payload(run_cli):
    _, out, _ = run_cli("eval", "--p", "3", "--n", "-3", "--format", "json")

    assert json.loads(out) == {"p": 3, "basis": "center", "n": "-3", "value": "9"}


def test_convert_power_to_s1(run_cli):
    status, out, _ = run_cli(
        "convert", "--p", "3", "--from", "power", "--to", "s1", "--coefficients", "0,1/4,1/2,1/4", "--format", "json"
    )

    assert status == 0
    assert json.loads(out) == {"p": 3, "basis": "s1", "coefficients": ["1"]}


def test_convert_accepts_negative_leading_coefficient_and_constant(run_cli):
    status, out, _ = run_cli(
        "convert", "--p", "3", "--from", "center", "--to", "power",
        "--coefficients", "-1/8,1/4", "--constant", "1/64", "--format", "json",
    )

    assert status == 0
    assert json.loads(out)["coefficients"] == ["0", "1/4", "1/2", "1/4"]


def test_convert_rejects_inconsistent_input(run_cli):
    status, out, err = run_cli("convert", "--p", "1", "--from", "center", "--to", "power", "--coefficients", "1/2", "--constant", "1/8")

    assert status == 2
    assert out == ""
    assert "vanish" in err


@pytest.mark.parametrize(
    ("argv", "message"),
    [
        (("--p", "3", "--from", "center", "--to", "s1", "--coefficients", "0,1/4", "--constant", "-1/64"), "S_3(1) = 5/4"),
        (("--p", "2", "--from", "power", "--to", "center", "--coefficients", "1/3,1,2/3"), "leading coefficient 2/3"),
        (("--p", "2", "--from", "power", "--to", "s1", "--coefficients", "1/3,1,2/3"), "leading coefficient 2/3"),
    ],
)
def test_convert_rejects_forms_that_are_not_the_power_sum(run_cli, argv, message):
    status, out, err = run_cli("convert", *argv, "--format", "json")

    assert status == 2
    assert out == ""
    assert message in err


def test_verify_passes(run_cli):
    status, out, _ = run_cli("verify", "--p-max", "11", "--n-max", "50", "--k-max", "5")

    assert status == 0
    assert out.startswith("PASSED:")


def test_verify_minimal_json(run_cli):
    status, out, _ = run_cli("verify", "--p-max", "1", "--n-max", "1", "--k-max", "1", "--format", "json", "--workers", "2")

    assert status == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert payload["failures"] == []


def test_verify_reports_injected_fault_with_exit_1(run_cli, monkeypatch):
    def broken(p):
        good = coeffs.coeffs_by_explicit(p)
        return coeffs.FaulhaberCoeffs(p, good.f[:-1] + (0,), good.constant)

    monkeypatch.setitem(coeffs.COEFFICIENT_METHODS, "explicit", broken)

    status, out, _ = run_cli("verify", "--p-max", "3", "--n-max", "3", "--k-max", "1", "--format", "json")

    assert status == 1
    payload = json.loads(out)
    assert {failure["check"] for failure in payload["failures"]} == {"agreement:explicit"}


def test_bench_k50_checksums_agree(run_cli):
    status, out, _ = run_cli("bench", "--k-max", "50", "--format", "json")

    assert status == 0
    rows = json.loads(out)["rows"]
    by_k = {}
    for row in rows:
        by_k.setdefault(row["k"], set()).add(row["checksum"])
    assert all(len(checksums) == 1 for checksums in by_k.values())
    assert {row["method"] for row in rows} >= {"recurrence", "determinant", "witmer", "explicit"}


def test_bench_k1_one_row_per_method(run_cli):
    status, out, _ = run_cli("bench", "--k-max", "1", "--methods", "recurrence,explicit")

    assert status == 0
    body = out.splitlines()[2:]
    assert [line.split()[2] for line in body] == ["explicit", "recurrence"]


@pytest.mark.slow
def test_bench_large_degree_excluding_determinant(run_cli):
    status, out, _ = run_cli("bench", "--k-max", "200", "--methods", "recurrence,explicit", "--format", "json")

    assert status == 0
    assert "determinant" not in {row["method"] for row in json.loads(out)["rows"]}


def test_msgpack_output(capsysbinary):
    pytest.importorskip("msgpack")

    assert main(["coeffs", "--p", "11", "--format", "msgpack"]) == 0

    payload = MessagePackSerializer().deserialize(capsysbinary.readouterr().out)
    assert payload["constant"] == "691/16384"


def test_missing_command_is_a_usage_error(run_cli):
    status, out, _ = run_cli()

    assert status == 2
    assert out == ""


def test_normalize_argv_only_glues_rational_values():
    assert normalize_argv(["convert", "--coefficients", "-1/12,1/3"]) == ["convert", "--coefficients=-1/12,1/3"]
    assert normalize_argv(["eval", "--n", "--p", "3"]) == ["eval", "--n", "--p", "3"]
    assert normalize_argv(["eval", "--p", "-3"]) == ["eval", "--p", "-3"]


def test_cli_config_from_namespace():
    args = build_parser().parse_args(["bench", "--k-max", "8", "--methods", "witmer, explicit", "--parity", "odd", "--all-k"])
    config = CliConfig.from_namespace(args)

    assert config.command == "bench"
    assert config.methods == ("witmer", "explicit")
    assert config.parity == "odd"
    assert config.geometric is False
    assert config.k_max == 8
