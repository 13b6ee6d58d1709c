"""
The cumulant generating series X(y) = 1/y + sum_i k_i y^(i-1) and the
derivative calculus built on it
"""
from functools import lru_cache
from typing import Dict, Mapping, Optional

import structlog

from config import settings
from core.exceptions import InvalidInputError, TruncationTooLowError
from models.kappa import KappaPolynomial
from models.kappa_spec import KappaSpec
from models.series import Coefficient, LaurentSeries, dX_derivative, residue, series_diff, series_mul, series_reciprocal

logger = structlog.get_logger(__name__)


def x_series(first_order: Mapping[int, Coefficient], trunc: int) -> LaurentSeries:
    """
    X(y) known below y^trunc

    Args:
        first_order: Value of k_i keyed by i (missing indices are zero)
        trunc: Exclusive truncation order

    Returns:
        LaurentSeries: 1/y + sum k_i y^(i-1)
    """
    terms: Dict[int, KappaPolynomial] = {-1: KappaPolynomial.one()}
    for index, value in first_order.items():
        if index < 1:
            raise InvalidInputError(f"Cumulant index must be positive, got {index}", field="first_order")
        if index - 1 < trunc:
            terms[index - 1] = terms.get(index - 1, KappaPolynomial.zero()) + KappaPolynomial.lift(value)
    return LaurentSeries.from_terms(terms, trunc, min_deg=-1)


def generic_x_series(cutoff: int, trunc: int) -> LaurentSeries:
    """X(y) with k_1 .. k_cutoff left as indeterminates"""
    return x_series({i: KappaPolynomial.kappa(i) for i in range(1, cutoff + 1)}, trunc)


def moment_truncation(n_max: int, margin: Optional[int] = None) -> int:
    """
    Truncation of X needed to read the y^-1 coefficient of W X^n X' for n <= n_max.

    Every series in the pipeline keeps the relative precision of X, so the
    integrand is known below y^(T - n); T >= n is sufficient.
    """
    margin = settings.truncation_margin if margin is None else margin
    return n_max + margin


class CumulantCurve:
    """X(y) together with cached derivatives, powers and 1/X'"""

    def __init__(self, X: LaurentSeries):
        if X.min_deg != -1 or X.coefficient(-1) != 1:
            raise InvalidInputError("X must have the shape 1/y + power series", field="X")
        self.X = X
        self._derivatives: Dict[int, LaurentSeries] = {0: X}
        self._powers: Dict[int, LaurentSeries] = {}
        self._inverse_xprime: Optional[LaurentSeries] = None

    @classmethod
    def from_spec(cls, spec: KappaSpec, cutoff: int, trunc: int) -> "CumulantCurve":
        return cls(x_series(spec.first_order_values(cutoff), trunc))

    @property
    def trunc(self) -> int:
        return self.X.trunc

    @property
    def precision(self) -> int:
        """Relative precision carried by every derived series"""
        return self.X.relative_precision

    def derivative(self, order: int) -> LaurentSeries:
        """X^(order)(y)"""
        if order not in self._derivatives:
            self._derivatives[order] = series_diff(self.derivative(order - 1))
        return self._derivatives[order]

    @property
    def inverse_xprime(self) -> LaurentSeries:
        """1/X'(y)"""
        if self._inverse_xprime is None:
            self._inverse_xprime = series_reciprocal(self.derivative(1))
        return self._inverse_xprime

    def power(self, n: int) -> LaurentSeries:
        """X(y)^n for n >= 0"""
        if n == 0:
            return self.monomial(0, 1)
        if n not in self._powers:
            self._powers[n] = self.X if n == 1 else series_mul(self.power(n - 1), self.X)
        return self._powers[n]

    def monomial(self, degree: int, coeff: Coefficient = 1) -> LaurentSeries:
        """coeff * y^degree, with enough precision not to limit products"""
        return LaurentSeries.monomial(degree, coeff, degree + self.precision + 1)

    def d_dX(self, f: LaurentSeries) -> LaurentSeries:
        return dX_derivative(f, self.X, self.inverse_xprime)

    def minus_d_dX(self, f: LaurentSeries, times: int = 1) -> LaurentSeries:
        """(-d/dX)^times f"""
        for _ in range(times):
            f = -self.d_dX(f)
        return f

    def moment(self, W: LaurentSeries, n: int) -> KappaPolynomial:
        """
        -Res_{y=0} W(y) X(y)^n X'(y) dy

        Raises:
            TruncationTooLowError: If y^-1 is outside the integrand's window
        """
        integrand = series_mul(series_mul(W, self.power(n)), self.derivative(1))
        try:
            return -residue(integrand)
        except TruncationTooLowError:
            logger.warning("moment outside truncation window", n=n, x_trunc=self.trunc, w_trunc=W.trunc)
            raise


@lru_cache(maxsize=64)
def generic_curve(cutoff: int, trunc: int) -> CumulantCurve:
    """Shared curve for generic coefficients"""
    return CumulantCurve(generic_x_series(cutoff, trunc))
