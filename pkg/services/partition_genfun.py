"""
Generating functions of genus-1 and genus-2 set partitions by block sizes
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, Optional, Tuple

import structlog

from core.exceptions import InvalidInputError, NotPairwiseDistinctError, RegularityViolatedError, UnsupportedGenusError
from models.kappa import KappaPolynomial
from models.kappa_spec import KappaSpec, SpecializedValue
from models.series import LaurentSeries, series_mul, series_pow
from services.cumulant_curve import CumulantCurve, generic_curve, moment_truncation
from services.permutation_genfun import w_per_genus

logger = structlog.get_logger(__name__)

SUPPORTED_GENERA = (1, 2)


@dataclass(frozen=True)
class BracketTerm:
    """coefficient * X''^second * X'''^third / (y^y_power X'^xprime_power)"""

    coefficient: Fraction
    y_power: int
    xprime_power: int
    second: int = 0
    third: int = 0


@dataclass(frozen=True)
class PartitionGfg:
    """The bracket to which one outer d/dX is applied"""

    g: int
    terms: Tuple[BracketTerm, ...]


GENUS_ONE = PartitionGfg(1, (
    BracketTerm(Fraction(1, 4), 4, 2),
    BracketTerm(Fraction(1, 6), 6, 3),
))

GENUS_TWO = PartitionGfg(2, (
    BracketTerm(Fraction(21, 8), 8, 4),
    BracketTerm(Fraction(74, 5), 10, 5),
    BracketTerm(Fraction(24), 12, 6),
    BracketTerm(Fraction(12), 14, 7),
    BracketTerm(Fraction(-1, 8), 8, 6, third=1),
    BracketTerm(Fraction(-1, 4), 10, 7, third=1),
    BracketTerm(Fraction(-1, 8), 12, 8, third=1),
    BracketTerm(Fraction(1, 24), 6, 6, second=2),
    BracketTerm(Fraction(1), 8, 7, second=2),
    BracketTerm(Fraction(19, 8), 10, 8, second=2),
    BracketTerm(Fraction(35, 24), 12, 9, second=2),
    BracketTerm(Fraction(1), 7, 5, second=1),
    BracketTerm(Fraction(23, 3), 9, 6, second=1),
    BracketTerm(Fraction(29, 2), 11, 7, second=1),
    BracketTerm(Fraction(8), 13, 8, second=1),
))

PLANS = {1: GENUS_ONE, 2: GENUS_TWO}


def partition_plan(g: int) -> PartitionGfg:
    if g not in PLANS:
        raise UnsupportedGenusError("partition", g, "1, 2")
    return PLANS[g]


def w_par_genus(g: int, X: LaurentSeries, curve: Optional[CumulantCurve] = None) -> LaurentSeries:
    """
    W^(g)_par(X(y)) for g in {1, 2}

    Args:
        g: Genus
        X: 1/y + power series

    Returns:
        LaurentSeries: Power series in y

    Raises:
        UnsupportedGenusError: For g outside {1, 2}
        RegularityViolatedError: If a negative power of y survives
    """
    plan = partition_plan(g)
    if curve is None or curve.X is not X:
        curve = CumulantCurve(X)
    inverse_powers: Dict[int, LaurentSeries] = {}
    bracket = None
    for term in plan.terms:
        if term.xprime_power not in inverse_powers:
            inverse_powers[term.xprime_power] = series_pow(curve.inverse_xprime, term.xprime_power)
        piece = series_mul(curve.monomial(-term.y_power, term.coefficient), inverse_powers[term.xprime_power])
        if term.second:
            piece = series_mul(piece, series_pow(curve.derivative(2), term.second))
        if term.third:
            piece = series_mul(piece, series_pow(curve.derivative(3), term.third))
        bracket = piece if bracket is None else bracket + piece
    result = curve.d_dX(bracket)
    for degree, coeff in result.terms().items():
        if degree < 0:
            raise RegularityViolatedError(g, degree)
    logger.debug("partition series built", g=g, trunc=result.trunc)
    return result


@lru_cache(maxsize=64)
def _generic_w_par(g: int, cutoff: int, trunc: int) -> LaurentSeries:
    curve = generic_curve(cutoff, trunc)
    return w_par_genus(g, curve.X, curve=curve)


def m_coefficients(g: int, n_values: Iterable[int], K: Optional[int] = None,
                   margin: Optional[int] = None) -> Dict[int, KappaPolynomial]:
    """Partition moment polynomials m_n^(g) for several n from one series"""
    partition_plan(g)
    ns = sorted(set(n_values))
    if not ns:
        return {}
    cutoff = max(ns) if K is None else K
    if cutoff < max(ns):
        raise InvalidInputError(f"Cutoff K={cutoff} below n={max(ns)}", field="cutoff")
    trunc = moment_truncation(max(ns), margin)
    cutoff = min(cutoff, trunc)
    curve = generic_curve(cutoff, trunc)
    W = _generic_w_par(g, cutoff, trunc)
    return {n: curve.moment(W, n) for n in ns}


def m_coefficient(g: int, n: int, K: Optional[int] = None, margin: Optional[int] = None) -> KappaPolynomial:
    """
    m_n^(g) = -Res_{y=0} W^(g)_par(X(y)) X(y)^n X'(y) dy

    Args:
        g: Genus, 1 or 2
        n: Moment size
        K: Cumulant cutoff, K >= n

    Returns:
        KappaPolynomial: Polynomial in k_1..k_n
    """
    return m_coefficients(g, [n], K if K is not None else n, margin)[n]


def specialize_partition_series(g: int, spec: KappaSpec, n_max: int,
                                margin: Optional[int] = None) -> List[SpecializedValue]:
    """m_n^(g) under a specialization for n = 0..n_max; genus 0 is the planar permutation series"""
    trunc = moment_truncation(n_max, margin)
    curve = CumulantCurve.from_spec(spec, trunc, trunc)
    W = w_per_genus(0, curve.X, curve=curve) if g == 0 else w_par_genus(g, curve.X, curve=curve)
    return [spec.collapse(curve.moment(W, n)) for n in range(n_max + 1)]


def faa_di_bruno_m1(p: int, k: int) -> int:
    """
    Genus-1 partitions of {1..pk} whose blocks all have size p

    Returns 0 when p < 2 or k < 2.
    """
    if p < 2 or k < 2:
        return 0
    total = Fraction(0)
    for l in range(k - 1):
        total += comb(p * k, l) * Fraction((k - 1 - l) * (k - l) * (k + 1 - l), 6) * (p - 1) ** (k - 2 - l)
    total *= Fraction((p - 1) ** 2 * p, 2)
    if total.denominator != 1:
        raise InvalidInputError(f"Non-integral count for p={p}, k={k}", field="p")
    return int(total)


def three_block_m1(r: int, p: int, q: int) -> int:
    """
    Genus-1 partitions with exactly three blocks of pairwise distinct sizes r, p, q

    Raises:
        NotPairwiseDistinctError: If two sizes coincide
    """
    if min(r, p, q) < 1:
        raise InvalidInputError(f"Block sizes must be positive: {(r, p, q)}", field="sizes")
    if len({r, p, q}) != 3:
        raise NotPairwiseDistinctError((r, p, q))
    n = r + p + q
    bracket = (
        p * (p - 1) * (q + r - 2)
        + q * (q - 1) * (p + r - 2)
        + r * (r - 1) * (q + p - 2)
        + 8 * (p - 1) * (r - 1) * (q - 1)
    )
    total = Fraction(n * bracket, 2)
    if total.denominator != 1:
        raise InvalidInputError(f"Non-integral count for {(r, p, q)}", field="sizes")
    return int(total)
