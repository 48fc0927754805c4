from fractions import Fraction

import pytest

from pyfaulhaber.bernoulli import BernoulliCache
from pyfaulhaber.coeffs import (
    COEFFICIENT_METHODS,
    FaulhaberCoeffs,
    applicable_methods,
    coeffs_by_closed_form,
    coeffs_by_derivative,
    coeffs_by_determinant,
    coeffs_by_explicit,
    coeffs_by_recurrence,
    coeffs_by_witmer,
    compute,
    constant_term,
    odd_from_even,
    split_degree,
)
from pyfaulhaber.polyforms import PolyForm, evaluate

from .conftest import C11, F10, F11


EVEN_METHODS = ["recurrence", "determinant", "witmer", "explicit", "closed-form"]
ODD_METHODS = EVEN_METHODS + ["derivative"]


@pytest.mark.parametrize("method", EVEN_METHODS)
def test_golden_even_vector_by_every_method(method):
    coeffs = compute(10, method)

    assert coeffs.f == F10
    assert coeffs.constant is None


@pytest.mark.parametrize("method", ODD_METHODS)
def test_golden_odd_vector_by_every_method(method):
    coeffs = compute(11, method)

    assert coeffs.f == F11
    assert coeffs.constant == C11


def test_small_powers():
    assert coeffs_by_recurrence(1) == FaulhaberCoeffs(1, (Fraction(1, 2),), Fraction(-1, 8))
    assert coeffs_by_recurrence(2).f == (Fraction(-1, 12), Fraction(1, 3))
    assert coeffs_by_witmer(2).f == (Fraction(-1, 12), Fraction(1, 3))
    assert coeffs_by_witmer(3) == FaulhaberCoeffs(3, (Fraction(-1, 8), Fraction(1, 4)), Fraction(1, 64))


def test_determinant_method_worked_entries():
    coeffs = coeffs_by_determinant(10)

    assert coeffs.f[5] == Fraction(1, 11)
    assert coeffs.f[4] == Fraction(-5, 12)


def test_explicit_method_constant_coefficients():
    assert coeffs_by_explicit(10).f[0] == Fraction(-2555, 33792)
    assert coeffs_by_explicit(11).f[0] == Fraction(-2555, 6144)
    assert coeffs_by_explicit(2).f[1] == Fraction(1, 3)


def test_odd_from_even_transfers_golden_vector():
    odd = odd_from_even(FaulhaberCoeffs(10, F10))

    assert odd.f == F11
    assert odd.constant == C11
    assert odd_from_even(coeffs_by_recurrence(2)) == coeffs_by_witmer(3)


def test_odd_from_even_rejects_odd_input():
    with pytest.raises(ValueError, match="even power"):
        odd_from_even(coeffs_by_recurrence(3))


@pytest.mark.parametrize("p", [1, 2, 4, 10])
def test_derivative_method_needs_odd_power_at_least_three(p):
    with pytest.raises(ValueError, match="odd p >= 3"):
        coeffs_by_derivative(p)


def test_constant_term_examples():
    assert constant_term(F11) == C11
    assert constant_term([Fraction(1, 2)]) == Fraction(-1, 8)
    assert constant_term([Fraction(-1, 8), Fraction(1, 4)]) == Fraction(1, 64)


@pytest.mark.parametrize("p", [0, -3])
@pytest.mark.parametrize("method", sorted(COEFFICIENT_METHODS))
def test_powers_below_one_are_rejected(p, method):
    with pytest.raises(ValueError):
        compute(p, method)


def test_compute_rejects_unknown_and_inapplicable_methods():
    with pytest.raises(ValueError, match="unknown method"):
        compute(4, "guess")
    with pytest.raises(ValueError, match="does not apply"):
        compute(10, "derivative")


def test_applicable_methods_follow_parity():
    assert "derivative" not in applicable_methods(10)
    assert "derivative" not in applicable_methods(1)
    assert applicable_methods(11) == tuple(COEFFICIENT_METHODS)


def test_split_degree():
    assert split_degree(1) == ("odd", 0)
    assert split_degree(2) == ("even", 1)
    with pytest.raises(ValueError, match="p >= 1"):
        split_degree(0)


@pytest.mark.parametrize("p", range(1, 101))
def test_all_applicable_methods_agree(p):
    reference = coeffs_by_recurrence(p)

    for method in applicable_methods(p):
        assert compute(p, method) == reference, method
    assert reference.leading == Fraction(1, p + 1)
    assert all(value != 0 for value in reference.f)


@pytest.mark.parametrize("p", range(1, 40, 2))
def test_odd_center_form_vanishes_at_zero(p):
    coeffs = coeffs_by_recurrence(p)

    assert evaluate(PolyForm.from_coeffs(coeffs), 0) == 0
    assert coeffs.constant == constant_term(coeffs.f)


def test_bernoulli_methods_accept_an_explicit_cache():
    cache = BernoulliCache()

    assert compute(20, "explicit", cache=cache) == coeffs_by_closed_form(20)
    assert len(cache) == 21


def test_faulhaber_coeffs_validates_shape_and_constant():
    with pytest.raises(ValueError, match="needs 2 coefficients"):
        FaulhaberCoeffs(2, (Fraction(1, 3),))
    with pytest.raises(ValueError, match="needs a constant"):
        FaulhaberCoeffs(3, (Fraction(-1, 8), Fraction(1, 4)))
    with pytest.raises(ValueError, match="no constant"):
        FaulhaberCoeffs(2, (Fraction(-1, 12), Fraction(1, 3)), Fraction(0))


def test_faulhaber_coeffs_payload_round_trip():
    coeffs = FaulhaberCoeffs(11, F11, C11)
    payload = coeffs.to_dict()

    assert payload["f"][-1] == "1/12"
    assert payload["constant"] == "691/16384"
    assert list(payload) == ["p", "k", "parity", "f", "constant"]
    assert FaulhaberCoeffs.from_dict(payload) == coeffs
    assert "constant" not in FaulhaberCoeffs(10, F10).to_dict()
