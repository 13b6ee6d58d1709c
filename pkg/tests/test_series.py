"""
Tests for truncated Laurent series in one and two variables
"""
import random
from fractions import Fraction

import pytest

from core.exceptions import (
    InvalidInputError,
    NonInvertibleLeadingError,
    NotDivisibleError,
    TruncationTooLowError,
)
from models.kappa import KappaPolynomial
from models.series import (
    BivariateLaurent,
    LaurentSeries,
    bivariate_exact_div,
    dX_derivative,
    residue,
    series_diff,
    series_mul,
    series_pow,
    series_reciprocal,
)
from services.cumulant_curve import generic_x_series

K1 = KappaPolynomial.kappa(1)
K2 = KappaPolynomial.kappa(2)


def random_coefficient(rng: random.Random) -> KappaPolynomial:
    value = KappaPolynomial.constant(Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
    if rng.random() < 0.4:
        value = value + KappaPolynomial.kappa(rng.randint(1, 3)).scale(rng.randint(-2, 2))
    return value


def random_series(rng: random.Random, low: int = -2, width: int = 6) -> LaurentSeries:
    min_deg = rng.randint(low, 1)
    coeffs = [random_coefficient(rng) for _ in range(width)]
    return LaurentSeries(min_deg, coeffs, min_deg + width)


def random_unit_series(rng: random.Random, width: int = 6) -> LaurentSeries:
    """Series whose leading coefficient is a nonzero constant"""
    min_deg = rng.randint(-2, 2)
    lead = KappaPolynomial.constant(rng.choice([-3, -1, 1, 2, Fraction(1, 2)]))
    coeffs = [lead] + [random_coefficient(rng) for _ in range(width - 1)]
    return LaurentSeries(min_deg, coeffs, min_deg + width)


class TestLaurentSeries:
    """Test cases for univariate series"""

    def setup_method(self):
        self.rng = random.Random(7)

    def test_reading_outside_window_raises(self):
        series = LaurentSeries.from_terms({-1: 1, 0: K1}, 3)
        assert series.coefficient(0) == K1
        assert series.coefficient(2) == 0
        with pytest.raises(TruncationTooLowError):
            series.coefficient(3)

    def test_product_truncation(self):
        a = LaurentSeries.from_terms({-1: 1}, 4, min_deg=-1)
        b = LaurentSeries.from_terms({-2: 1, 0: K2}, 2, min_deg=-2)
        product = series_mul(a, b)
        assert product.trunc == min(4 - 2, 2 - 1)
        assert product.coefficient(-3) == 1
        assert product.coefficient(-1) == K2

    def test_ring_axioms_on_common_window(self):
        for _ in range(100):
            a, b, c = (random_series(self.rng) for _ in range(3))
            assert (a * b).agrees_with(b * a)
            assert ((a * b) * c).agrees_with(a * (b * c))
            assert (a * (b + c)).agrees_with(a * b + a * c)
            assert (a - a).terms() == {}

    def test_reciprocal_round_trip(self):
        for _ in range(100):
            a = random_unit_series(self.rng)
            inverse = series_reciprocal(a)
            product = series_mul(a, inverse)
            assert product.trunc == a.relative_precision
            assert product.terms() == {0: KappaPolynomial.one()}

    def test_reciprocal_strips_leading_zeros(self):
        series = LaurentSeries(-1, [0, 2, K1], 2)
        inverse = series_reciprocal(series)
        assert inverse.min_deg == 0
        assert inverse.coefficient(0) == Fraction(1, 2)
        assert inverse.trunc == 2

    def test_reciprocal_needs_unit_leading_coefficient(self):
        with pytest.raises(NonInvertibleLeadingError):
            series_reciprocal(LaurentSeries.from_terms({0: K1, 1: 1}, 3))
        with pytest.raises(NonInvertibleLeadingError):
            series_reciprocal(LaurentSeries.zero(3))

    def test_reciprocal_rejects_leading_coefficient_with_cumulant_part(self):
        with pytest.raises(NonInvertibleLeadingError) as exc:
            series_reciprocal(LaurentSeries.from_terms({-1: K1 + 1, 0: 1}, 3))
        assert "not a rational constant" in exc.value.message
        assert exc.value.details["leading"] == (K1 + 1).render()
        inverse = series_reciprocal(LaurentSeries.from_terms({-1: -2, 0: K1}, 3))
        assert inverse.coefficient(1) == Fraction(-1, 2)

    def test_negative_powers(self):
        a = random_unit_series(self.rng)
        assert series_mul(series_pow(a, -2), series_pow(a, 2)).terms() == {0: KappaPolynomial.one()}
        assert series_pow(a, 0).terms() == {0: KappaPolynomial.one()}

    def test_leibniz_rule_for_d_dX(self):
        X = generic_x_series(4, 6)
        for _ in range(100):
            f = random_series(self.rng, low=0)
            g = random_series(self.rng, low=0)
            lhs = dX_derivative(series_mul(f, g), X)
            rhs = series_mul(dX_derivative(f, X), g) + series_mul(f, dX_derivative(g, X))
            assert lhs.agrees_with(rhs)

    def test_residue_of_derivative_vanishes(self):
        for _ in range(100):
            f = random_series(self.rng)
            derivative = series_diff(f)
            if derivative.trunc > -1:
                assert residue(derivative) == 0

    def test_truncation_soundness(self):
        for _ in range(100):
            a = random_series(self.rng)
            b = random_series(self.rng)
            extended_a = LaurentSeries(a.min_deg, list(a.coeffs) + [random_coefficient(self.rng)], a.trunc + 1)
            extended_b = LaurentSeries(b.min_deg, list(b.coeffs) + [random_coefficient(self.rng)], b.trunc + 1)
            assert series_mul(a, b).agrees_with(series_mul(extended_a, extended_b))

    def test_residue_requires_window(self):
        with pytest.raises(TruncationTooLowError):
            residue(LaurentSeries.from_terms({-3: 1}, -1))

    def test_shift_and_truncate(self):
        series = LaurentSeries.from_terms({0: 1, 1: K1}, 3)
        shifted = series.shift(-2)
        assert shifted.min_deg == -2 and shifted.trunc == 1
        assert shifted.coefficient(-1) == K1
        assert series.truncate(1).terms() == {0: KappaPolynomial.one()}


class TestBivariateLaurent:
    """Test cases for bivariate series and exact division"""

    def setup_method(self):
        self.rng = random.Random(11)

    def test_exact_division_by_difference(self):
        # (y1^2 - y2^2) / (y1 - y2) = y1 + y2
        numerator = BivariateLaurent.exact({(2, 0): 1, (0, 2): -1})
        quotient = bivariate_exact_div(numerator, 1)
        assert quotient.terms == {(1, 0): KappaPolynomial.one(), (0, 1): KappaPolynomial.one()}

    def test_exact_division_round_trip(self):
        difference = BivariateLaurent.exact({(1, 0): 1, (0, 1): -1})
        for _ in range(100):
            terms = {(self.rng.randint(-2, 2), self.rng.randint(-2, 2)): random_coefficient(self.rng)
                     for _ in range(4)}
            base = BivariateLaurent.exact(terms)
            numerator = base * difference * difference
            quotient = bivariate_exact_div(numerator, 2)
            assert quotient.agrees_with(base)

    def test_remainder_raises(self):
        with pytest.raises(NotDivisibleError):
            bivariate_exact_div(BivariateLaurent.exact({(1, 0): 1}), 1)

    def test_division_needs_exact_input(self):
        truncated = BivariateLaurent({(1, 0): 1, (0, 1): -1}, 3, 3)
        with pytest.raises(TruncationTooLowError):
            bivariate_exact_div(truncated, 1)

    def test_reciprocal_round_trip(self):
        for _ in range(100):
            terms = {}
            for _ in range(3):
                terms[(self.rng.randint(-1, 2), self.rng.randint(-1, 2))] = random_coefficient(self.rng)
            terms[(-1, -1)] = KappaPolynomial.one()
            series = BivariateLaurent.exact(terms)
            inverse = series.reciprocal(5, 5)
            product = series * inverse
            assert product.agrees_with(BivariateLaurent.one())

    def test_reciprocal_of_exact_series_needs_window(self):
        with pytest.raises(InvalidInputError):
            BivariateLaurent.exact({(0, 0): 1, (1, 1): K1}).reciprocal()

    def test_residue_in_each_variable(self):
        series = BivariateLaurent.exact({(-1, 2): K1, (3, -1): K2, (-1, -1): 5})
        inner_y2 = series.residue(2)
        assert inner_y2.coefficient(3) == K2
        assert inner_y2.coefficient(-1) == 5
        inner_y1 = series.residue(1)
        assert inner_y1.coefficient(2) == K1
        assert residue(inner_y1) == residue(inner_y2) == 5

    def test_shift_and_euler_operator(self):
        series = BivariateLaurent.exact({(1, 2): K1, (0, 3): 1})
        assert series.euler_operator().terms == {(1, 2): K1.scale(2)}
        assert series.shift(-1, 1).terms == {(0, 3): K1, (-1, 4): KappaPolynomial.one()}

    def test_swap(self):
        series = BivariateLaurent({(0, 1): K1}, 4, None)
        swapped = series.swap()
        assert swapped.terms == {(1, 0): K1}
        assert swapped.trunc1 is None and swapped.trunc2 == 4
