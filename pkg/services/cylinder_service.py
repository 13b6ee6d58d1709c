"""
Planar cylinder generating functions with two boundaries

The diagonal pole of 1/(X(y1) - X(y2))^2 is removed by exact division:
with B = (X(y1) - X(y2)) / (y1 - y2),

    W_perm = (X2 + E / B^2) / (X'(y1) X'(y2)),   E = (B^2 - X'(y1) X'(y2)) / (y1 - y2)^2

where X2 is the generating series of the second-order cumulants. X is
treated as the Laurent polynomial of its known terms.
"""
from typing import Dict, Iterable, List, Optional, Tuple

import structlog

from config import settings
from core.exceptions import InvalidInputError, RegularityViolatedError
from models.kappa import KappaPolynomial
from models.kappa_spec import BivariateCumulantSpec
from models.series import (
    BivariateLaurent,
    LaurentSeries,
    bivariate_exact_div,
    residue,
    series_diff,
    series_mul,
    series_pow,
    series_reciprocal,
)
from services.cumulant_curve import x_series

logger = structlog.get_logger(__name__)

CYLINDER_KINDS = ("perm", "part")
OVERCOUNT_FORMS = ("coefficients", "operator")

Pair = Tuple[int, int]


def _laurent_polynomial(X: LaurentSeries, trunc: int) -> LaurentSeries:
    """X with its window widened to trunc; every unknown coefficient is zero"""
    if X.min_deg != -1 or X.coefficient(-1) != 1:
        raise InvalidInputError("X must have the shape 1/y + power series", field="X")
    terms = X.terms()
    return LaurentSeries.from_terms(terms, max(trunc, max(terms) + 1), min_deg=-1)


def _tight(series: BivariateLaurent) -> BivariateLaurent:
    """Exact series with degree bounds taken from its terms"""
    return BivariateLaurent.exact(series.terms)


def spec_x_series(spec: BivariateCumulantSpec) -> LaurentSeries:
    """X(y) from the first-order part of a cylinder spec"""
    return x_series(dict(spec.first_order), max(spec.k1, 1) + 1)


def difference_quotient(X: LaurentSeries) -> BivariateLaurent:
    """B(y1, y2) = (X(y1) - X(y2)) / (y1 - y2), exact"""
    difference: Dict[Pair, KappaPolynomial] = {}
    for degree, coeff in X.terms().items():
        for key, value in (((degree, 0), coeff), ((0, degree), -coeff)):
            difference[key] = difference[key] + value if key in difference else value
    return _tight(bivariate_exact_div(BivariateLaurent.exact(difference), 1))


def _xprime_product(X: LaurentSeries) -> BivariateLaurent:
    terms = series_diff(_laurent_polynomial(X, 0)).terms()
    return BivariateLaurent.exact({(a, b): ca * cb for a, ca in terms.items() for b, cb in terms.items()})


def diagonal_numerator(X: LaurentSeries) -> Tuple[BivariateLaurent, BivariateLaurent]:
    """
    B and E = (B^2 - X'(y1) X'(y2)) / (y1 - y2)^2

    Raises:
        NotDivisibleError: If the numerator is not divisible by (y1 - y2)^2
    """
    B = difference_quotient(X)
    numerator = B * B - _xprime_product(X)
    return B, _tight(bivariate_exact_div(numerator, 2))


def second_order_series(spec: BivariateCumulantSpec) -> BivariateLaurent:
    """X(y1, y2) = sum k_{i,j} y1^(i-1) y2^(j-1), symmetric"""
    terms: Dict[Pair, KappaPolynomial] = {}
    for (i, j), value in spec.second_order:
        terms[(i - 1, j - 1)] = value
        terms[(j - 1, i - 1)] = value
    return BivariateLaurent.exact(terms)


def overcount_series(spec: BivariateCumulantSpec, form: str = "coefficients") -> BivariateLaurent:
    """
    sum_{i,j >= 1} (1 - ij) k_{i+j} y1^(i-1) y2^(j-1)

    Args:
        spec: Cumulant values; only the first-order part is used
        form: 'coefficients' builds the sum term by term, 'operator' evaluates
            (1/(y1 y2)) (1 - y1 d/dy1 y2 d/dy2) (y1 y2 B(y1, y2) + 1)

    Returns:
        BivariateLaurent: Exact polynomial
    """
    if form not in OVERCOUNT_FORMS:
        raise InvalidInputError(f"Unknown overcount form '{form}'", field="form")
    if form == "coefficients":
        terms = {}
        for i in range(1, spec.k1):
            for j in range(1, spec.k1 - i + 1):
                value = spec.first(i + j).scale(1 - i * j)
                if value:
                    terms[(i - 1, j - 1)] = value
        return BivariateLaurent.exact(terms)
    return _overcount_from_x(spec_x_series(spec))


def _overcount_from_x(X: LaurentSeries) -> BivariateLaurent:
    lifted = difference_quotient(X).shift(1, 1) + BivariateLaurent.one()
    return _tight((lifted - lifted.euler_operator()).shift(-1, -1))


def substitute_overcount(spec: BivariateCumulantSpec) -> BivariateCumulantSpec:
    """k_{i,j} -> k_{i,j} + (1 - ij) k_{i+j} for every pair with i + j <= K1"""
    second: Dict[Pair, KappaPolynomial] = dict(spec.second_order)
    for total in range(2, spec.k1 + 1):
        value = spec.first(total)
        if not value:
            continue
        for i in range(1, total // 2 + 1):
            key = (i, total - i)
            shifted = value.scale(1 - i * (total - i))
            second[key] = second[key] + shifted if key in second else shifted
    k2 = max(spec.k2, spec.k1 - 1)
    return BivariateCumulantSpec.build(dict(spec.first_order), second, spec.k1, k2)


def w2_perm(X: LaurentSeries, X2: BivariateLaurent, trunc1: int, trunc2: int) -> BivariateLaurent:
    """
    W^(0)_perm,2(X(y1), X(y2)) known below y1^trunc1 and y2^trunc2

    Args:
        X: 1/y + polynomial in y
        X2: Exact second-order series
        trunc1: Truncation in y1
        trunc2: Truncation in y2

    Returns:
        BivariateLaurent: Power series in (y1, y2)

    Raises:
        NotDivisibleError: If the diagonal numerator fails to divide
        RegularityViolatedError: If a negative power survives
    """
    if not X2.is_exact:
        raise InvalidInputError("Second-order series must be exact", field="X2")
    B, E = diagonal_numerator(X)
    # 1/B^2 starts at y1^2 y2^2 and so do both factors 1/X'
    inverse_b2 = (B * B).reciprocal(trunc1 - 2 - E.min1, trunc2 - 2 - E.min2)
    inner = X2 + E * inverse_b2

    x_trunc = max(trunc1 - inner.min1, trunc2 - inner.min2)
    inverse_xprime = series_reciprocal(series_diff(_laurent_polynomial(X, x_trunc)))
    result = inner * BivariateLaurent.from_univariate(inverse_xprime, 1)
    result = (result * BivariateLaurent.from_univariate(inverse_xprime, 2)).restrict(trunc1, trunc2)

    for d1, d2 in result.terms:
        if d1 < 0 or d2 < 0:
            raise RegularityViolatedError(0, min(d1, d2))
    logger.debug("cylinder series built", trunc1=result.trunc1, trunc2=result.trunc2, terms=len(result.terms))
    return BivariateLaurent(result.terms, result.trunc1, result.trunc2, 0, 0)


def w2_part(X: LaurentSeries, X2: BivariateLaurent, trunc1: int, trunc2: int) -> BivariateLaurent:
    """W^(0)_par,2: the permutation series with the overcount correction added to X2"""
    return w2_perm(X, X2 + _overcount_from_x(X), trunc1, trunc2)


def cylinder_series(kind: str, spec: BivariateCumulantSpec, trunc1: int, trunc2: int,
                    route: str = "operator") -> BivariateLaurent:
    """
    W^(0)_{kind,2} for a cumulant spec

    For kind 'part', route 'operator' adds the correction series while
    'substitution' rewrites the second-order cumulants first.
    """
    if kind not in CYLINDER_KINDS:
        raise InvalidInputError(f"Unknown cylinder kind '{kind}'", field="kind")
    if route not in ("operator", "substitution"):
        raise InvalidInputError(f"Unknown route '{route}'", field="route")
    X = spec_x_series(spec)
    if kind == "perm":
        return w2_perm(X, second_order_series(spec), trunc1, trunc2)
    if route == "substitution":
        return w2_perm(X, second_order_series(substitute_overcount(spec)), trunc1, trunc2)
    return w2_part(X, second_order_series(spec), trunc1, trunc2)


def _moment_factor(X: LaurentSeries, power: int, trunc: int, variable: int) -> BivariateLaurent:
    """X(y)^power X'(y) embedded in one variable"""
    exact = _laurent_polynomial(X, trunc + power + 2)
    factor = series_mul(series_pow(exact, power), series_diff(exact)) if power else series_diff(exact)
    return BivariateLaurent.from_univariate(factor, variable)


def double_residue(W2: BivariateLaurent, X: LaurentSeries, i: int, j: int, inner: int = 2) -> KappaPolynomial:
    """
    Res_{y1} Res_{y2} W2 X(y1)^i X'(y1) X(y2)^j X'(y2)

    Args:
        inner: Variable whose residue is taken first (1 or 2)
    """
    if inner not in (1, 2):
        raise InvalidInputError(f"Inner variable must be 1 or 2, got {inner}", field="inner")
    window = max(W2.trunc1 or 0, W2.trunc2 or 0) + 1
    product = W2 * _moment_factor(X, i, window, 1) * _moment_factor(X, j, window, 2)
    return residue(product.residue(inner))


def _default_spec(total: int, second_order_zero: bool) -> BivariateCumulantSpec:
    return BivariateCumulantSpec.generic(total, total, with_second_order=not second_order_zero)


def m2_coefficients(
    kind: str,
    pairs: Iterable[Pair],
    spec: Optional[BivariateCumulantSpec] = None,
    second_order_zero: bool = False,
    margin: Optional[int] = None,
    inner: int = 2,
) -> Dict[Pair, KappaPolynomial]:
    """
    Cylinder moments m^(0)_{i,j} for several (i, j) from one bivariate series

    Args:
        kind: 'perm' or 'part'
        pairs: Boundary sizes (i, j), both positive
        spec: Cumulant values (defaults to every cumulant symbolic up to max i+j)
        second_order_zero: With the default spec, drop every k_{i,j}
        margin: Extra truncation beyond the minimum
        inner: Variable whose residue is taken first

    Returns:
        Dict[Pair, KappaPolynomial]: m^(0)_{i,j} keyed by (i, j)
    """
    pairs = sorted(set(pairs))
    if not pairs:
        return {}
    for i, j in pairs:
        if i < 1 or j < 1:
            raise InvalidInputError(f"Boundary sizes must be positive, got ({i}, {j})", field="boundary")
    if spec is None:
        spec = _default_spec(max(i + j for i, j in pairs), second_order_zero)
    elif second_order_zero:
        spec = spec.without_second_order()
    margin = settings.truncation_margin if margin is None else margin
    trunc1 = max(i for i, _ in pairs) + 2 + margin
    trunc2 = max(j for _, j in pairs) + 2 + margin

    W2 = cylinder_series(kind, spec, trunc1, trunc2)
    X = spec_x_series(spec)
    logger.info("cylinder moments", kind=kind, pairs=len(pairs), k1=spec.k1, k2=spec.k2)
    return {(i, j): double_residue(W2, X, i, j, inner) for i, j in pairs}


def m2_coefficient(
    kind: str,
    i: int,
    j: int,
    spec: Optional[BivariateCumulantSpec] = None,
    second_order_zero: bool = False,
    margin: Optional[int] = None,
) -> KappaPolynomial:
    """
    m^(0)_{i,j} = Res_{y1} Res_{y2} W^(0)_2(X(y1), X(y2)) X(y1)^i X(y2)^j X'(y1) X'(y2)

    Args:
        kind: 'perm' or 'part'
        i: Points on the first boundary
        j: Points on the second boundary

    Returns:
        KappaPolynomial: Polynomial in k_a and k_{a,b}, of weight i + j
    """
    return m2_coefficients(kind, [(i, j)], spec, second_order_zero, margin)[(i, j)]


def grid(i_values: Iterable[int], j_values: Iterable[int]) -> List[Pair]:
    return [(i, j) for i in sorted(set(i_values)) for j in sorted(set(j_values))]
