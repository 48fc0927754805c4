"""Command-line front end: ``pyfaulhaber {coeffs,poly,convert,eval,verify,bench}``.

Exit status is 0 on success, 1 when ``verify`` finds failures and 2 for usage
errors. Errors go to stderr and nothing is written to stdout on an error path.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, fields
from fractions import Fraction
import logging
import sys
from typing import Callable, Optional, Sequence

from . import render
from .bench import mismatched_ks, run_bench
from .coeffs import COEFFICIENT_METHODS, compute
from .oracle import run_verification
from .polyforms import (
    BASES,
    PolyForm,
    center_to_power,
    center_to_s1,
    convert,
    evaluate,
    explicit_center_polynomial,
    from_coefficients,
    power_basis_bernoulli,
)
from .ratnum import format_rational, parse_rational
from .serializers import SERIALIZERS, serializer_for


logger = logging.getLogger(__name__)

COMMANDS = ("coeffs", "poly", "convert", "eval", "verify", "bench")
FORMATS = ("text", "json", "latex", "msgpack")
_VALUE_FLAGS = ("--n", "--constant", "--coefficients")
_POWER_METHOD_HELP = "default: recurrence; without it the power basis comes from the Bernoulli formula"


@dataclass(frozen=True)
class CliConfig:
    """Validated options for one invocation.

    Examples:
        >>> CliConfig(command="coeffs", p=11, method="derivative").method
        'derivative'
        >>> CliConfig(command="coeffs", p=10, method="derivative")
        Traceback (most recent call last):
        ...
        ValueError: method 'derivative' is only valid for odd p >= 3, got p=10
    """

    command: str
    p: Optional[int] = None
    method: Optional[str] = None
    basis: str = "center"
    target_basis: Optional[str] = None
    n: Optional[Fraction] = None
    coefficients: tuple[Fraction, ...] = ()
    constant: Optional[Fraction] = None
    p_max: int = 11
    n_max: int = 50
    k_max: int = 5
    workers: int = 1
    methods: Optional[tuple[str, ...]] = None
    parity: str = "even"
    geometric: bool = True
    format: str = "text"
    verbose: int = 0

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {', '.join(FORMATS)}, got {self.format!r}")
        if self.method is not None and self.method not in COEFFICIENT_METHODS:
            raise ValueError(f"unknown method {self.method!r}; choose from {', '.join(COEFFICIENT_METHODS)}")
        if self.command in ("coeffs", "poly", "convert", "eval"):
            if self.p is None:
                raise ValueError(f"{self.command} needs --p")
            if self.p < 0:
                raise ValueError(f"p must be non-negative, got {self.p}")
            if self.p == 0 and self.method is not None:
                raise ValueError("p=0 only has the Bernoulli power form; --method does not apply")
        if self.command in ("coeffs", "poly") and self.method == "derivative" and (self.p % 2 == 0 or self.p < 3):
            raise ValueError(f"method 'derivative' is only valid for odd p >= 3, got p={self.p}")
        if self.command == "eval" and self.n is None:
            raise ValueError("eval needs --n")
        if self.command == "verify":
            for name in ("p_max", "n_max", "k_max", "workers"):
                if getattr(self, name) < 1:
                    raise ValueError(f"--{name.replace('_', '-')} must be at least 1")
        if self.command == "bench" and self.k_max < 1:
            raise ValueError("--k-max must be at least 1")

    @property
    def coefficient_method(self) -> str:
        """The requested method, or ``"recurrence"`` when none was given."""
        return self.method or "recurrence"

    @classmethod
    def from_namespace(cls, args: argparse.Namespace) -> "CliConfig":
        """Build a config from parsed arguments, converting rational strings."""
        known = {field.name for field in fields(cls)}
        values = {name: value for name, value in vars(args).items() if name in known and value is not None}
        if "n" in values:
            values["n"] = parse_rational(values["n"])
        if "constant" in values:
            values["constant"] = parse_rational(values["constant"])
        if "coefficients" in values:
            values["coefficients"] = tuple(parse_rational(item) for item in values["coefficients"].split(",") if item.strip())
        if "methods" in values:
            values["methods"] = tuple(item.strip() for item in values["methods"].split(",") if item.strip())
        return cls(**values)


def normalize_argv(argv: Sequence[str]) -> list[str]:
    """Glue negative rational values to their flag so argparse accepts them.

    Examples:
        >>> normalize_argv(["eval", "--p", "11", "--n", "-1/2"])
        ['eval', '--p', '11', '--n=-1/2']
    """
    out: list[str] = []
    tokens = list(argv)
    index = 0
    while index < len(tokens):
        token = tokens[index]
        if token in _VALUE_FLAGS and index + 1 < len(tokens) and tokens[index + 1].startswith("-"):
            candidate = tokens[index + 1]
            try:
                for item in candidate.split(","):
                    parse_rational(item)
            except (ValueError, ZeroDivisionError):
                out.append(token)
            else:
                out.append(f"{token}={candidate}")
                index += 1
        else:
            out.append(token)
        index += 1
    return out


def build_parser() -> argparse.ArgumentParser:
    """Return the top-level parser with one subparser per command.

    ``--format`` and ``-v`` are shared by every subcommand. Rational values are
    kept as strings here and parsed by ``CliConfig.from_namespace``.
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text", help="output format (default: text)")
    common.add_argument("-v", "--verbose", action="count", default=0, help="log to stderr; repeat for debug")

    parser = argparse.ArgumentParser(
        prog="pyfaulhaber",
        description="Exact Faulhaber power-sum polynomials, cross-checked methods and benchmarks.",
    )
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    coeffs = commands.add_parser("coeffs", parents=[common], help="Faulhaber coefficients of S_p in N = n + 1/2")
    coeffs.add_argument("--p", type=int, required=True)
    coeffs.add_argument("--method", choices=tuple(COEFFICIENT_METHODS), help="default: recurrence")

    poly = commands.add_parser("poly", parents=[common], help="S_p as a polynomial in one basis")
    poly.add_argument("--p", type=int, required=True)
    poly.add_argument("--basis", choices=BASES, default="center")
    poly.add_argument("--method", choices=tuple(COEFFICIENT_METHODS), help=_POWER_METHOD_HELP)

    conv = commands.add_parser("convert", parents=[common], help="convert user-supplied coefficients between bases")
    conv.add_argument("--p", type=int, required=True)
    conv.add_argument("--from", dest="basis", choices=BASES, required=True)
    conv.add_argument("--to", dest="target_basis", choices=BASES, required=True)
    conv.add_argument("--coefficients", required=True, help='comma-separated rationals in storage order, e.g. "-1/12,1/3"')
    conv.add_argument("--constant", help="constant term of an odd center form")

    ev = commands.add_parser("eval", parents=[common], help="evaluate S_p at a rational n")
    ev.add_argument("--p", type=int, required=True)
    ev.add_argument("--n", required=True, help='integer or "a/b"')
    ev.add_argument("--basis", choices=BASES, default="center")
    ev.add_argument("--method", choices=tuple(COEFFICIENT_METHODS), help=_POWER_METHOD_HELP)

    verify = commands.add_parser("verify", parents=[common], help="cross-check every method against brute force")
    verify.add_argument("--p-max", type=int, default=11)
    verify.add_argument("--n-max", type=int, default=50)
    verify.add_argument("--k-max", type=int, default=5)
    verify.add_argument("--workers", type=int, default=1)

    bench = commands.add_parser("bench", parents=[common], help="time the coefficient methods")
    bench.add_argument("--k-max", type=int, required=True)
    bench.add_argument("--methods", help="comma-separated method names (default: all applicable)")
    bench.add_argument("--parity", choices=("even", "odd"), default="even")
    bench.add_argument("--all-k", dest="geometric", action="store_false", help="measure every k instead of powers of two")
    return parser


def configure_logging(verbose: int) -> None:
    """Send log records to stderr at WARNING, one level lower per ``-v`` down to DEBUG."""
    level = logging.WARNING if verbose <= 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


@dataclass(frozen=True)
class Output:
    """Lazily rendered command result."""

    payload: Callable[[], dict]
    text: Callable[[], str]
    latex: Callable[[], str]


def _form(config: CliConfig) -> PolyForm:
    """Build S_p in the requested basis.

    The power basis comes straight from the Bernoulli formula unless a method
    was named, in which case it is expanded from that method's center form.
    """
    p = config.p
    if config.basis == "power" and config.method is None:
        return power_basis_bernoulli(p)
    if config.coefficient_method == "closed-form":
        center = explicit_center_polynomial(p)
    else:
        center = PolyForm.from_coeffs(compute(p, config.coefficient_method))
    if config.basis == "power":
        return center_to_power(center)
    if config.basis == "s1":
        return center_to_s1(center)
    return center


def _form_output(form: PolyForm) -> Output:
    """Wrap a polynomial for the poly and convert commands."""
    return Output(form.to_dict, lambda: render.polynomial_text(form), lambda: render.polynomial_latex(form))


def cmd_coeffs(config: CliConfig) -> tuple[Output, int]:
    """Compute the center-basis coefficients with the requested method."""
    coeffs = compute(config.p, config.coefficient_method)
    return Output(coeffs.to_dict, lambda: render.coeffs_text(coeffs), lambda: render.coeffs_latex(coeffs)), 0


def cmd_poly(config: CliConfig) -> tuple[Output, int]:
    """Print S_p in ``--basis``."""
    return _form_output(_form(config)), 0


def cmd_convert(config: CliConfig) -> tuple[Output, int]:
    """Validate user coefficients and convert them to ``--to``.

    Raises:
        InconsistentPolynomialError: If the input does not describe ``S_p``
            or would lose terms in the target basis.
    """
    source = from_coefficients(config.p, config.basis, config.coefficients, config.constant)
    return _form_output(convert(source, config.target_basis)), 0


def cmd_eval(config: CliConfig) -> tuple[Output, int]:
    """Evaluate ``S_p(n)`` through the form ``_form`` builds."""
    value = evaluate(_form(config), config.n)
    payload = {
        "p": config.p,
        "basis": config.basis,
        "n": format_rational(config.n),
        "value": format_rational(value),
    }
    return Output(lambda: payload, lambda: render.value_text(value), lambda: render.value_latex(value)), 0


def cmd_verify(config: CliConfig) -> tuple[Output, int]:
    """Run the cross-checks; exit status 1 when any check fails."""
    report = run_verification(config.p_max, config.n_max, config.k_max, workers=config.workers)
    status = 0 if report.passed else 1
    return Output(report.to_dict, lambda: render.report_text(report), lambda: render.report_latex(report)), status


def cmd_bench(config: CliConfig) -> tuple[Output, int]:
    """Time the methods. Checksum disagreements are logged, not fatal."""
    rows = run_bench(config.k_max, config.methods, parity=config.parity, geometric=config.geometric)
    mismatched = mismatched_ks(rows)
    if mismatched:
        logger.warning("methods disagree on the coefficients for k = %s", ", ".join(map(str, mismatched)))
    return Output(lambda: render.bench_payload(rows), lambda: render.bench_text(rows), lambda: render.bench_latex(rows)), 0


HANDLERS: dict[str, Callable[[CliConfig], tuple[Output, int]]] = {
    "coeffs": cmd_coeffs,
    "poly": cmd_poly,
    "convert": cmd_convert,
    "eval": cmd_eval,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


def _encode(output: Output, fmt: str) -> bytes:
    """Serialize ``output`` in ``fmt``; text and LaTeX end with a newline."""
    if fmt in SERIALIZERS:
        return serializer_for(fmt).serialize(output.payload())
    text = output.latex() if fmt == "latex" else output.text()
    return (text + "\n").encode("utf-8")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit status.

    Usage errors raise ``SystemExit(2)`` through ``ArgumentParser.error``.
    """
    parser = build_parser()
    args = parser.parse_args(normalize_argv(sys.argv[1:] if argv is None else argv))
    configure_logging(args.verbose)
    try:
        config = CliConfig.from_namespace(args)
        output, status = HANDLERS[config.command](config)
        data = _encode(output, config.format)
    except (ValueError, TypeError, ZeroDivisionError, ImportError) as exc:
        parser.error(str(exc))
    if config.format in SERIALIZERS and not serializer_for(config.format).text:
        sys.stdout.buffer.write(data)
    else:
        sys.stdout.write(data.decode("utf-8"))
    sys.stdout.flush()
    return status


if __name__ == "__main__":
    sys.exit(main())
