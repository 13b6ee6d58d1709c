"""
Truncated Laurent series over the cumulant polynomial ring

A LaurentSeries knows its coefficients at degrees min_deg .. trunc-1 and
nothing at or above trunc. Every operation reports the largest truncation
it can prove; reading outside the known window raises.
BivariateLaurent does the same per variable, with None meaning exact
(no truncation) in that variable.
"""
from __future__ import annotations

from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from core.exceptions import (
    InvalidInputError,
    NonInvertibleLeadingError,
    NotDivisibleError,
    TruncationTooLowError,
)
from models.kappa import KappaPolynomial, Scalar

Coefficient = Union[KappaPolynomial, Scalar]
Degree2 = Tuple[int, int]

_ZERO = KappaPolynomial.zero()


def _min_trunc(*values: Optional[int]) -> Optional[int]:
    known = [v for v in values if v is not None]
    return min(known) if known else None


def _add_trunc(trunc: Optional[int], shift: int) -> Optional[int]:
    return None if trunc is None else trunc + shift


class LaurentSeries:
    """Univariate truncated Laurent series in y"""

    __slots__ = ("min_deg", "coeffs", "trunc")

    def __init__(self, min_deg: int, coeffs: Sequence[Coefficient], trunc: int):
        if trunc < min_deg:
            min_deg = trunc
        width = trunc - min_deg
        lifted = [KappaPolynomial.lift(c) for c in list(coeffs)[:width]]
        lifted.extend([_ZERO] * (width - len(lifted)))
        self.min_deg = min_deg
        self.coeffs: Tuple[KappaPolynomial, ...] = tuple(lifted)
        self.trunc = trunc

    # Constructors

    @classmethod
    def from_terms(cls, terms: Mapping[int, Coefficient], trunc: int, min_deg: Optional[int] = None) -> LaurentSeries:
        """Build from a degree -> coefficient map; terms at or beyond trunc are dropped"""
        low = min(terms) if terms else trunc
        if min_deg is not None:
            if terms and low < min_deg:
                raise InvalidInputError(f"Term at degree {low} below min_deg {min_deg}", field="min_deg")
            low = min_deg
        low = min(low, trunc)
        coeffs = [_ZERO] * (trunc - low)
        for degree, value in terms.items():
            if degree < trunc:
                coeffs[degree - low] = coeffs[degree - low] + KappaPolynomial.lift(value)
        return cls(low, coeffs, trunc)

    @classmethod
    def monomial(cls, degree: int, coeff: Coefficient, trunc: int) -> LaurentSeries:
        return cls.from_terms({degree: coeff}, trunc, min_deg=degree)

    @classmethod
    def zero(cls, trunc: int) -> LaurentSeries:
        return cls(trunc, [], trunc)

    # Inspection

    def coefficient(self, degree: int) -> KappaPolynomial:
        if degree >= self.trunc:
            raise TruncationTooLowError("coefficient", degree, self.trunc)
        if degree < self.min_deg:
            return _ZERO
        return self.coeffs[degree - self.min_deg]

    def __getitem__(self, degree: int) -> KappaPolynomial:
        return self.coefficient(degree)

    def terms(self) -> Dict[int, KappaPolynomial]:
        """Nonzero known coefficients keyed by degree"""
        return {self.min_deg + k: c for k, c in enumerate(self.coeffs) if c}

    def leading_degree(self) -> Optional[int]:
        for k, c in enumerate(self.coeffs):
            if c:
                return self.min_deg + k
        return None

    @property
    def relative_precision(self) -> int:
        return self.trunc - self.min_deg

    def truncate(self, trunc: int) -> LaurentSeries:
        """Forget coefficients at or above trunc"""
        if trunc >= self.trunc:
            return self
        return LaurentSeries(self.min_deg, self.coeffs, trunc)

    def map_coefficients(self, fn: Callable[[KappaPolynomial], KappaPolynomial]) -> LaurentSeries:
        return LaurentSeries(self.min_deg, [fn(c) for c in self.coeffs], self.trunc)

    def agrees_with(self, other: LaurentSeries) -> bool:
        """Equal on the common known window"""
        top = min(self.trunc, other.trunc)
        low = min(self.min_deg, other.min_deg, top)
        return all(self.coefficient(d) == other.coefficient(d) for d in range(low, top))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.terms() == other.terms()

    def __hash__(self) -> int:
        return hash((self.trunc, frozenset(self.terms().items())))

    # Arithmetic

    def __add__(self, other: Union[LaurentSeries, Coefficient]) -> LaurentSeries:
        if not isinstance(other, LaurentSeries):
            return self + LaurentSeries.monomial(0, other, max(self.trunc, 1))
        trunc = min(self.trunc, other.trunc)
        low = min(self.min_deg, other.min_deg, trunc)
        coeffs = []
        for degree in range(low, trunc):
            a = self.coeffs[degree - self.min_deg] if degree >= self.min_deg else _ZERO
            b = other.coeffs[degree - other.min_deg] if degree >= other.min_deg else _ZERO
            coeffs.append(a + b if a and b else (a or b))
        return LaurentSeries(low, coeffs, trunc)

    __radd__ = __add__

    def __neg__(self) -> LaurentSeries:
        return LaurentSeries(self.min_deg, [-c for c in self.coeffs], self.trunc)

    def __sub__(self, other: Union[LaurentSeries, Coefficient]) -> LaurentSeries:
        if not isinstance(other, LaurentSeries):
            return self + (-KappaPolynomial.lift(other))
        return self + (-other)

    def scale(self, factor: Coefficient) -> LaurentSeries:
        factor = KappaPolynomial.lift(factor)
        return LaurentSeries(self.min_deg, [c * factor for c in self.coeffs], self.trunc)

    def __mul__(self, other: Union[LaurentSeries, Coefficient]) -> LaurentSeries:
        if not isinstance(other, LaurentSeries):
            return self.scale(other)
        return series_mul(self, other)

    def __rmul__(self, other: Coefficient) -> LaurentSeries:
        return self.scale(other)

    def __pow__(self, exponent: int) -> LaurentSeries:
        return series_pow(self, exponent)

    def shift(self, offset: int) -> LaurentSeries:
        """Multiply by y^offset"""
        return LaurentSeries(self.min_deg + offset, self.coeffs, self.trunc + offset)

    def derivative(self) -> LaurentSeries:
        return series_diff(self)

    def reciprocal(self) -> LaurentSeries:
        return series_reciprocal(self)

    def residue(self) -> KappaPolynomial:
        return residue(self)

    def render(self) -> str:
        parts = [f"({c.render()})*y^{d}" for d, c in sorted(self.terms().items())]
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(y^{self.trunc})"

    def __repr__(self) -> str:
        return f"LaurentSeries({self.render()})"


def series_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    """
    Product of two truncated series.

    The result is known below min(a.trunc + b.min_deg, b.trunc + a.min_deg),
    i.e. its relative precision is the smaller of the two inputs'.
    """
    low = a.min_deg + b.min_deg
    trunc = min(a.trunc + b.min_deg, b.trunc + a.min_deg)
    width = trunc - low
    if width <= 0:
        return LaurentSeries.zero(trunc)
    acc: List[KappaPolynomial] = [_ZERO] * width
    a_terms = [(k, c) for k, c in enumerate(a.coeffs[:width]) if c]
    b_terms = [(k, c) for k, c in enumerate(b.coeffs[:width]) if c]
    for i, ca in a_terms:
        for j, cb in b_terms:
            if i + j >= width:
                break
            acc[i + j] = acc[i + j] + ca * cb
    return LaurentSeries(low, acc, trunc)


def series_pow(a: LaurentSeries, exponent: int) -> LaurentSeries:
    if exponent < 0:
        return series_pow(series_reciprocal(a), -exponent)
    result: Optional[LaurentSeries] = None
    base = a
    while exponent:
        if exponent & 1:
            result = base if result is None else series_mul(result, base)
        exponent >>= 1
        if exponent:
            base = series_mul(base, base)
    if result is None:
        return LaurentSeries.monomial(0, 1, a.relative_precision)
    return result


def series_reciprocal(a: LaurentSeries) -> LaurentSeries:
    """
    Multiplicative inverse.

    Leading zeros inside the window are stripped first; the first nonzero
    coefficient, at degree m, must be a nonzero rational constant. A leading
    coefficient such as 1 + k1 has an invertible constant part but no inverse
    among cumulant polynomials, so it is rejected as well. The result starts
    at -m and is known below a.trunc - 2m.

    Raises:
        NonInvertibleLeadingError: If no nonzero coefficient is known or the
            leading coefficient is not a rational constant
    """
    m = a.leading_degree()
    if m is None:
        raise NonInvertibleLeadingError("Series has no known nonzero coefficient")
    lead = a.coefficient(m)
    if not lead.is_constant:
        reason = "has no constant part" if not lead.constant_term else "is not a rational constant"
        raise NonInvertibleLeadingError(
            f"Leading coefficient {lead.render()} at y^{m} {reason}", leading=lead.render()
        )
    inverse_lead = 1 / lead.constant_term
    width = a.trunc - m
    tail = [a.coefficient(m + k) for k in range(width)]
    out: List[KappaPolynomial] = [KappaPolynomial.constant(inverse_lead)]
    for k in range(1, width):
        acc = _ZERO
        for i in range(1, k + 1):
            if tail[i] and out[k - i]:
                acc = acc + tail[i] * out[k - i]
        out.append(acc.scale(-inverse_lead))
    return LaurentSeries(-m, out, -m + width)


def series_diff(a: LaurentSeries) -> LaurentSeries:
    """d/dy; the window shrinks by one"""
    coeffs = [c.scale(a.min_deg + k) for k, c in enumerate(a.coeffs)]
    return LaurentSeries(a.min_deg - 1, coeffs, a.trunc - 1)


def dX_derivative(f: LaurentSeries, X: LaurentSeries, inverse_xprime: Optional[LaurentSeries] = None) -> LaurentSeries:
    """
    d/dX f = f'(y) / X'(y)

    Args:
        f: Series in y
        X: The change of variables x = X(y)
        inverse_xprime: Precomputed 1/X'(y), if available

    Returns:
        LaurentSeries: The derivative with respect to X
    """
    if inverse_xprime is None:
        inverse_xprime = series_reciprocal(series_diff(X))
    return series_mul(series_diff(f), inverse_xprime)


def residue(f: LaurentSeries) -> KappaPolynomial:
    """Coefficient of y^-1; raises if that degree is not in the window"""
    if -1 >= f.trunc:
        raise TruncationTooLowError("residue", -1, f.trunc)
    return f.coefficient(-1)


class BivariateLaurent:
    """
    Truncated Laurent series in (y1, y2).

    min1/min2 bound the degrees of every term, known or not. trunc1/trunc2
    are exclusive per-variable truncation orders; None means exact.
    """

    __slots__ = ("terms", "min1", "min2", "trunc1", "trunc2")

    def __init__(
        self,
        terms: Mapping[Degree2, Coefficient],
        trunc1: Optional[int] = None,
        trunc2: Optional[int] = None,
        min1: Optional[int] = None,
        min2: Optional[int] = None,
    ):
        kept: Dict[Degree2, KappaPolynomial] = {}
        for (d1, d2), value in terms.items():
            if trunc1 is not None and d1 >= trunc1:
                continue
            if trunc2 is not None and d2 >= trunc2:
                continue
            poly = KappaPolynomial.lift(value)
            if poly:
                kept[(d1, d2)] = poly
        low1 = min((d1 for d1, _ in kept), default=None)
        low2 = min((d2 for _, d2 in kept), default=None)
        if min1 is None:
            min1 = low1 if low1 is not None else (trunc1 if trunc1 is not None else 0)
        elif low1 is not None and low1 < min1:
            raise InvalidInputError(f"Term at y1^{low1} below min1 {min1}", field="min1")
        if min2 is None:
            min2 = low2 if low2 is not None else (trunc2 if trunc2 is not None else 0)
        elif low2 is not None and low2 < min2:
            raise InvalidInputError(f"Term at y2^{low2} below min2 {min2}", field="min2")
        self.terms: Dict[Degree2, KappaPolynomial] = kept
        self.min1 = min1
        self.min2 = min2
        self.trunc1 = trunc1
        self.trunc2 = trunc2

    # Constructors

    @classmethod
    def from_univariate(cls, series: LaurentSeries, variable: int = 1) -> BivariateLaurent:
        """Embed a series in y1 (variable=1) or y2 (variable=2); exact in the other variable"""
        if variable == 1:
            return cls({(d, 0): c for d, c in series.terms().items()}, series.trunc, None, series.min_deg, 0)
        return cls({(0, d): c for d, c in series.terms().items()}, None, series.trunc, 0, series.min_deg)

    @classmethod
    def exact(cls, terms: Mapping[Degree2, Coefficient]) -> BivariateLaurent:
        return cls(terms)

    @classmethod
    def one(cls) -> BivariateLaurent:
        return cls({(0, 0): 1})

    # Inspection

    @property
    def is_exact(self) -> bool:
        return self.trunc1 is None and self.trunc2 is None

    def coefficient(self, d1: int, d2: int) -> KappaPolynomial:
        if self.trunc1 is not None and d1 >= self.trunc1:
            raise TruncationTooLowError("coefficient(y1)", d1, self.trunc1)
        if self.trunc2 is not None and d2 >= self.trunc2:
            raise TruncationTooLowError("coefficient(y2)", d2, self.trunc2)
        return self.terms.get((d1, d2), _ZERO)

    def restrict(self, trunc1: Optional[int], trunc2: Optional[int]) -> BivariateLaurent:
        """Lower the truncation orders (never raises them)"""
        t1 = _min_trunc(self.trunc1, trunc1)
        t2 = _min_trunc(self.trunc2, trunc2)
        return BivariateLaurent(self.terms, t1, t2, self.min1, self.min2)

    def swap(self) -> BivariateLaurent:
        """Exchange the roles of y1 and y2"""
        return BivariateLaurent(
            {(d2, d1): c for (d1, d2), c in self.terms.items()},
            self.trunc2, self.trunc1, self.min2, self.min1,
        )

    def agrees_with(self, other: BivariateLaurent) -> bool:
        """Equal on the common known window"""
        t1 = _min_trunc(self.trunc1, other.trunc1)
        t2 = _min_trunc(self.trunc2, other.trunc2)

        def inside(key: Degree2) -> bool:
            return (t1 is None or key[0] < t1) and (t2 is None or key[1] < t2)

        mine = {k: v for k, v in self.terms.items() if inside(k)}
        theirs = {k: v for k, v in other.terms.items() if inside(k)}
        return mine == theirs

    def map_coefficients(self, fn: Callable[[KappaPolynomial], KappaPolynomial]) -> BivariateLaurent:
        return BivariateLaurent({k: fn(c) for k, c in self.terms.items()}, self.trunc1, self.trunc2,
                                self.min1, self.min2)

    def sorted_terms(self) -> List[Tuple[int, int, KappaPolynomial]]:
        return [(d1, d2, c) for (d1, d2), c in sorted(self.terms.items())]

    # Arithmetic

    def __add__(self, other: BivariateLaurent) -> BivariateLaurent:
        t1 = _min_trunc(self.trunc1, other.trunc1)
        t2 = _min_trunc(self.trunc2, other.trunc2)
        terms = dict(self.terms)
        for key, value in other.terms.items():
            terms[key] = terms[key] + value if key in terms else value
        return BivariateLaurent(terms, t1, t2, min(self.min1, other.min1),
                                min(self.min2, other.min2))

    def __neg__(self) -> BivariateLaurent:
        return self.map_coefficients(lambda c: -c)

    def __sub__(self, other: BivariateLaurent) -> BivariateLaurent:
        return self + (-other)

    def scale(self, factor: Coefficient) -> BivariateLaurent:
        factor = KappaPolynomial.lift(factor)
        return self.map_coefficients(lambda c: c * factor)

    def __mul__(self, other: Union[BivariateLaurent, Coefficient]) -> BivariateLaurent:
        if not isinstance(other, BivariateLaurent):
            return self.scale(other)
        t1 = _min_trunc(_add_trunc(self.trunc1, other.min1), _add_trunc(other.trunc1, self.min1))
        t2 = _min_trunc(_add_trunc(self.trunc2, other.min2), _add_trunc(other.trunc2, self.min2))
        terms: Dict[Degree2, KappaPolynomial] = {}
        for (a1, a2), ca in self.terms.items():
            for (b1, b2), cb in other.terms.items():
                d1, d2 = a1 + b1, a2 + b2
                if (t1 is not None and d1 >= t1) or (t2 is not None and d2 >= t2):
                    continue
                key = (d1, d2)
                product = ca * cb
                terms[key] = terms[key] + product if key in terms else product
        low1 = self.min1 + other.min1
        low2 = self.min2 + other.min2
        return BivariateLaurent(terms, t1, t2, low1, low2)

    __rmul__ = scale

    def shift(self, s1: int, s2: int) -> BivariateLaurent:
        """Multiply by y1^s1 y2^s2"""
        return BivariateLaurent(
            {(d1 + s1, d2 + s2): c for (d1, d2), c in self.terms.items()},
            _add_trunc(self.trunc1, s1), _add_trunc(self.trunc2, s2), self.min1 + s1, self.min2 + s2,
        )

    def euler_operator(self) -> BivariateLaurent:
        """Apply y1 d/dy1 y2 d/dy2, i.e. multiply the (d1, d2) term by d1*d2"""
        return BivariateLaurent(
            {(d1, d2): c.scale(d1 * d2) for (d1, d2), c in self.terms.items()},
            self.trunc1, self.trunc2, self.min1, self.min2,
        )

    def reciprocal(self, trunc1: Optional[int] = None, trunc2: Optional[int] = None) -> BivariateLaurent:
        """
        Multiplicative inverse, computed as a geometric series around the
        leading monomial y1^min1 y2^min2.

        Args:
            trunc1: Requested truncation in y1 (required when the input is exact in y1)
            trunc2: Requested truncation in y2 (required when the input is exact in y2)

        Raises:
            NonInvertibleLeadingError: If the coefficient at (min1, min2) is not a nonzero constant
        """
        m1, m2 = self.min1, self.min2
        lead = self.terms.get((m1, m2), _ZERO)
        if not lead or not lead.is_constant:
            raise NonInvertibleLeadingError(
                f"Leading coefficient at y1^{m1} y2^{m2} is not a unit", leading=lead.render()
            )
        t1 = _min_trunc(_add_trunc(self.trunc1, -2 * m1), trunc1)
        t2 = _min_trunc(_add_trunc(self.trunc2, -2 * m2), trunc2)
        if t1 is None or t2 is None:
            raise InvalidInputError("Reciprocal of an exact bivariate series needs explicit truncation orders",
                                    field="trunc")
        # relative window for the normalized series 1 - Z
        r1, r2 = t1 + m1, t2 + m2
        inverse_lead = 1 / lead.constant_term
        z_terms = {}
        for (d1, d2), c in self.terms.items():
            key = (d1 - m1, d2 - m2)
            if key != (0, 0) and key[0] < r1 and key[1] < r2:
                z_terms[key] = c.scale(-inverse_lead)
        z = BivariateLaurent(z_terms, r1, r2, 0, 0)
        total = dict(BivariateLaurent.one().restrict(r1, r2).terms)
        power = BivariateLaurent({(0, 0): 1}, r1, r2, 0, 0)
        while True:
            power = (power * z).restrict(r1, r2)
            if not power.terms:
                break
            for key, value in power.terms.items():
                total[key] = total[key] + value if key in total else value
        result = {(d1 - m1, d2 - m2): c.scale(inverse_lead) for (d1, d2), c in total.items()}
        return BivariateLaurent(result, t1, t2, -m1, -m2)

    def exact_div_diagonal(self, k: int) -> BivariateLaurent:
        return bivariate_exact_div(self, k)

    def residue(self, variable: int = 2) -> LaurentSeries:
        """
        Residue in one variable, returned as a series in the other.

        Args:
            variable: 2 takes Res_{y2} (coefficient of y2^-1), 1 takes Res_{y1}

        Returns:
            LaurentSeries: Series in the remaining variable
        """
        source = self if variable == 2 else self.swap()
        if source.trunc2 is not None and -1 >= source.trunc2:
            raise TruncationTooLowError("residue(y2)", -1, source.trunc2)
        column = {d1: c for (d1, d2), c in source.terms.items() if d2 == -1}
        trunc = source.trunc1
        if trunc is None:
            trunc = max(column, default=source.min1) + 1
        return LaurentSeries.from_terms(column, trunc, min_deg=min(source.min1, trunc))

    def render(self) -> str:
        parts = [f"({c.render()})*y1^{d1}*y2^{d2}" for d1, d2, c in self.sorted_terms()]
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"BivariateLaurent({self.render()}; trunc=({self.trunc1}, {self.trunc2}))"


def bivariate_exact_div(num: BivariateLaurent, k: int) -> BivariateLaurent:
    """
    Divide an exact bivariate Laurent polynomial by (y1 - y2)^k.

    Each division step works per anti-diagonal d1 + d2 = D: the quotient on
    diagonal D-1 is the running suffix sum of the numerator coefficients,
    and the full diagonal sum must vanish.

    Raises:
        TruncationTooLowError: If the numerator is truncated
        NotDivisibleError: If a remainder is left
    """
    if k < 1:
        raise InvalidInputError(f"Division exponent must be positive, got {k}", field="k")
    if not num.is_exact:
        raise TruncationTooLowError("bivariate_exact_div", 0, num.trunc1 if num.trunc1 is not None else num.trunc2)
    current = num
    for _ in range(k):
        diagonals: Dict[int, Dict[int, KappaPolynomial]] = {}
        for (d1, d2), c in current.terms.items():
            diagonals.setdefault(d1 + d2, {})[d1] = c
        quotient: Dict[Degree2, KappaPolynomial] = {}
        for total_degree, row in diagonals.items():
            first_degrees = sorted(row)
            diagonal_sum = _ZERO
            for d1 in first_degrees:
                diagonal_sum = diagonal_sum + row[d1]
            if diagonal_sum:
                raise NotDivisibleError("(y1 - y2)", total_degree)
            suffix = _ZERO
            for a in range(first_degrees[-1] - 1, first_degrees[0] - 1, -1):
                suffix = suffix + row.get(a + 1, _ZERO)
                if suffix:
                    quotient[(a, total_degree - 1 - a)] = suffix
        current = BivariateLaurent(quotient, None, None, current.min1, current.min2)
    return current
