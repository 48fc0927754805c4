"""PyFaulhaber package."""

from .bernoulli import BernoulliCache, bernoulli_half, bernoulli_number
from .coeffs import COEFFICIENT_METHODS, FaulhaberCoeffs, compute
from .oracle import VerifyReport, brute_force_sum, run_verification
from .polyforms import InconsistentPolynomialError, PolyForm, convert, evaluate
from .ratnum import ZeroDenominatorError, rat

__all__ = [
    "COEFFICIENT_METHODS",
    "BernoulliCache",
    "FaulhaberCoeffs",
    "InconsistentPolynomialError",
    "PolyForm",
    "VerifyReport",
    "ZeroDenominatorError",
    "bernoulli_half",
    "bernoulli_number",
    "brute_force_sum",
    "compute",
    "convert",
    "evaluate",
    "rat",
    "run_verification",
]
