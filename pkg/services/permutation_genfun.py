"""
Generating functions of genus-g permutations by cycle type

W^(g)(X(y)) is evaluated in the y-chart, either term by term over the
integer partitions of g or through the exponential generating form in
(hbar^2, u). Moments are read off by residues at y = 0.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterable, List, Optional, Tuple

import structlog

from core.exceptions import InvalidInputError, TruncationTooLowError
from models.combinatorics import IntegerPartition, integer_partitions
from models.kappa import KappaPolynomial
from models.kappa_spec import KappaSpec, SpecializedValue
from models.series import LaurentSeries, residue, series_mul, series_pow, series_reciprocal
from services.cumulant_curve import CumulantCurve, generic_curve, generic_x_series, moment_truncation

logger = structlog.get_logger(__name__)


def taylor_weight(k: int) -> Fraction:
    """1 / (2^(2k) (2k+1)!): weight of X^(2k) in the symmetric difference quotient"""
    return Fraction(1, 4 ** k * factorial(2 * k + 1))


@dataclass(frozen=True)
class GenusTerm:
    """One integer partition a of g in the permutation formula"""

    partition: IntegerPartition
    order: int
    factor: Fraction
    derivative_orders: Tuple[int, ...]


@dataclass(frozen=True)
class GenusTermPlan:
    g: int
    terms: Tuple[GenusTerm, ...]


@lru_cache(maxsize=None)
def genus_term_plan(g: int) -> GenusTermPlan:
    """
    Terms of the genus-g formula: one per partition a of g, with
    order 2g + len(a) - 1 and factor prod taylor_weight(a_i) / sym(a)

    Args:
        g: Genus >= 1 (g = 0 has no terms)
    """
    if g < 0:
        raise InvalidInputError(f"Genus must be nonnegative, got {g}", field="g")
    terms = []
    for partition in integer_partitions(g) if g else ():
        factor = Fraction(1, partition.sym())
        for part in partition.parts:
            factor *= taylor_weight(part)
        terms.append(GenusTerm(
            partition=partition,
            order=2 * g + len(partition) - 1,
            factor=factor,
            derivative_orders=tuple(2 * part for part in partition.parts),
        ))
    return GenusTermPlan(g, tuple(terms))


def _identity_series(curve: CumulantCurve) -> LaurentSeries:
    """W^(0) = y, with the precision the other genera carry"""
    return LaurentSeries.monomial(1, 1, curve.trunc + 2)


def _curve_for(X: LaurentSeries, curve: Optional[CumulantCurve]) -> CumulantCurve:
    if curve is not None and curve.X is X:
        return curve
    return CumulantCurve(X)


def w_per_genus(g: int, X: LaurentSeries, order: Optional[int] = None,
                curve: Optional[CumulantCurve] = None) -> LaurentSeries:
    """
    W^(g)_per(X(y)) as a power series in y

    Args:
        g: Genus
        X: 1/y + power series
        order: If given, the result must be known below y^order
        curve: Cached derivative data for X

    Returns:
        LaurentSeries: Power series in y

    Raises:
        TruncationTooLowError: If X does not carry enough precision for order
    """
    curve = _curve_for(X, curve)
    if g == 0:
        result = _identity_series(curve)
    else:
        result = None
        for term in genus_term_plan(g).terms:
            inner = -curve.inverse_xprime
            for k in term.derivative_orders:
                inner = series_mul(inner, curve.derivative(k))
            inner = curve.minus_d_dX(inner.scale(term.factor), term.order)
            result = inner if result is None else result + inner
    if order is not None and result.trunc < order:
        raise TruncationTooLowError("w_per_genus", order - 1, result.trunc)
    logger.debug("permutation series built", g=g, trunc=result.trunc)
    return result


HbarSeries = Dict[Tuple[int, int], LaurentSeries]


def _hbar_product(a: HbarSeries, b: HbarSeries, h_max: int) -> HbarSeries:
    out: HbarSeries = {}
    for (ha, ua), sa in a.items():
        for (hb, ub), sb in b.items():
            if ha + hb > h_max:
                continue
            key = (ha + hb, ua + ub)
            product = series_mul(sa, sb)
            out[key] = out[key] + product if key in out else product
    return out


def w_per_hbar(g_max: int, X: LaurentSeries, curve: Optional[CumulantCurve] = None) -> List[LaurentSeries]:
    """
    W^(g)_per for g = 0..g_max from the exponential form.

    Expands exp(E) with E = sum_k X^(2k) h^k u^(2k+1) / (4^k (2k+1)!),
    h = hbar^2, keeping h-degree <= g_max; then
    W^(g) = sum_m (-d/dX)^m [(-1/X') [h^g u^(m+1)] exp(E)].

    Args:
        g_max: Largest genus
        X: 1/y + power series

    Returns:
        List[LaurentSeries]: Entry g is W^(g)
    """
    if g_max < 0:
        raise InvalidInputError(f"g_max must be nonnegative, got {g_max}", field="g_max")
    curve = _curve_for(X, curve)
    exponent: HbarSeries = {
        (k, 2 * k + 1): curve.derivative(2 * k).scale(taylor_weight(k)) for k in range(1, g_max + 1)
    }
    expansion: HbarSeries = {(0, 0): curve.monomial(0, 1)}
    power: HbarSeries = {(0, 0): curve.monomial(0, 1)}
    for r in range(1, g_max + 1):
        power = _hbar_product(power, exponent, g_max)
        for key, series in power.items():
            scaled = series.scale(Fraction(1, factorial(r)))
            expansion[key] = expansion[key] + scaled if key in expansion else scaled

    results = [_identity_series(curve)]
    for g in range(1, g_max + 1):
        total = None
        for (h, u), coeff in sorted(expansion.items()):
            if h != g:
                continue
            term = curve.minus_d_dX(series_mul(-curve.inverse_xprime, coeff), u - 1)
            total = term if total is None else total + term
        results.append(total)
    return results


@lru_cache(maxsize=128)
def _generic_w(g: int, cutoff: int, trunc: int) -> LaurentSeries:
    curve = generic_curve(cutoff, trunc)
    return w_per_genus(g, curve.X, curve=curve)


def alpha_coefficients(g: int, n_values: Iterable[int], K: Optional[int] = None,
                       margin: Optional[int] = None) -> Dict[int, KappaPolynomial]:
    """
    Moment polynomials alpha_n^(g) for several n from one series

    Args:
        g: Genus
        n_values: Moment sizes
        K: Cumulant cutoff (defaults to max n); must be >= every n
        margin: Extra truncation beyond the minimum

    Returns:
        Dict[int, KappaPolynomial]: alpha_n^(g) keyed by n
    """
    ns = sorted(set(n_values))
    if not ns:
        return {}
    if ns[0] < 0:
        raise InvalidInputError(f"Moment size must be nonnegative, got {ns[0]}", field="n")
    cutoff = max(ns) if K is None else K
    if cutoff < max(ns):
        raise InvalidInputError(f"Cutoff K={cutoff} below n={max(ns)}", field="cutoff")
    trunc = moment_truncation(max(ns), margin)
    cutoff = min(cutoff, trunc)
    curve = generic_curve(cutoff, trunc)
    W = _generic_w(g, cutoff, trunc)
    return {n: curve.moment(W, n) for n in ns}


def alpha_coefficient(g: int, n: int, K: Optional[int] = None, margin: Optional[int] = None) -> KappaPolynomial:
    """
    alpha_n^(g) = -Res_{y=0} W^(g)_per(X(y)) X(y)^n X'(y) dy

    Args:
        g: Genus
        n: Moment size
        K: Cumulant cutoff, K >= n

    Returns:
        KappaPolynomial: Polynomial in k_1..k_n
    """
    return alpha_coefficients(g, [n], K if K is not None else n, margin)[n]


def specialize_series(g: int, spec: KappaSpec, n_max: int, margin: Optional[int] = None) -> List[SpecializedValue]:
    """
    alpha_n^(g) under a specialization, for n = 0..n_max

    Entry n is the coefficient of 1/x^(n+1) in W^(g)_per(x).
    """
    trunc = moment_truncation(n_max, margin)
    curve = CumulantCurve.from_spec(spec, trunc, trunc)
    W = w_per_genus(g, curve.X, curve=curve)
    values = [spec.collapse(curve.moment(W, n)) for n in range(n_max + 1)]
    logger.info("specialized permutation series", g=g, spec=spec.preset.value, n_max=n_max)
    return values


def planar_moment_lagrange(n: int, K: Optional[int] = None, margin: Optional[int] = None) -> KappaPolynomial:
    """alpha_n^(0) = [y^-1] X(y)^(n+1) / (n+1), independent of the residue route"""
    trunc = moment_truncation(n, margin)
    cutoff = n if K is None else min(K, trunc)
    X = generic_x_series(cutoff, trunc)
    return residue(series_pow(X, n + 1)).scale(Fraction(1, n + 1))


def planar_inverse_check(n_max: int, K: Optional[int] = None) -> LaurentSeries:
    """
    X(W^(0)(x)) as a series in z = 1/x, with W^(0) = sum_n alpha_n^(0) z^(n+1).

    The result equals 1/z inside its window.
    """
    cutoff = n_max if K is None else K
    alphas = alpha_coefficients(0, range(n_max + 1), max(cutoff, n_max))
    W0 = LaurentSeries.from_terms({n + 1: alphas[n] for n in range(n_max + 1)}, n_max + 2, min_deg=1)
    total = series_reciprocal(W0)
    power = LaurentSeries.monomial(0, 1, n_max + 1)
    for i in range(1, cutoff + 1):
        total = total + power.scale(KappaPolynomial.kappa(i))
        power = series_mul(power, W0)
    return total
