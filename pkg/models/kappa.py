"""
Sparse polynomials in the free cumulant indeterminates

First-order cumulants are written k1, k2, ...; second-order cumulants are
written k1_2 (always with the smaller index first).
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

from core.exceptions import InvalidInputError

Scalar = Union[int, Fraction]
Pair = Tuple[int, int]

_FACTOR = re.compile(r"^k(\d+)(?:_(\d+))?(?:\^(\d+))?$")
_NUMBER = re.compile(r"^\d+(?:/\d+)?$")


def canonical_pair(i: int, j: int) -> Pair:
    """Order a second-order index pair so that i <= j"""
    if i < 1 or j < 1:
        raise InvalidInputError(f"Cumulant indices must be positive, got ({i}, {j})", field="index")
    return (i, j) if i <= j else (j, i)


@dataclass(frozen=True)
class KappaMonomial:
    """
    Product of cumulant indeterminates.

    Both maps are stored as sorted tuples of (index, exponent) with positive
    exponents, so equal monomials compare and hash equal.
    """

    first_order: Tuple[Tuple[int, int], ...] = ()
    second_order: Tuple[Tuple[Pair, int], ...] = ()
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.first_order, self.second_order)))

    def __hash__(self) -> int:
        return self._hash

    @classmethod
    def build(
        cls,
        first_order: Optional[Mapping[int, int]] = None,
        second_order: Optional[Mapping[Pair, int]] = None,
    ) -> KappaMonomial:
        first: Dict[int, int] = {}
        for index, exponent in (first_order or {}).items():
            if index < 1:
                raise InvalidInputError(f"Cumulant index must be positive, got {index}", field="index")
            if exponent < 0:
                raise InvalidInputError(f"Negative exponent {exponent}", field="exponent")
            if exponent:
                first[index] = first.get(index, 0) + exponent
        second: Dict[Pair, int] = {}
        for pair, exponent in (second_order or {}).items():
            if exponent < 0:
                raise InvalidInputError(f"Negative exponent {exponent}", field="exponent")
            if exponent:
                key = canonical_pair(*pair)
                second[key] = second.get(key, 0) + exponent
        return cls(tuple(sorted(first.items())), tuple(sorted(second.items())))

    @classmethod
    def kappa(cls, index: int, exponent: int = 1) -> KappaMonomial:
        return cls.build({index: exponent})

    @classmethod
    def kappa2(cls, i: int, j: int, exponent: int = 1) -> KappaMonomial:
        return cls.build(second_order={(i, j): exponent})

    def __mul__(self, other: KappaMonomial) -> KappaMonomial:
        if not self.first_order and not self.second_order:
            return other
        if not other.first_order and not other.second_order:
            return self
        return _monomial_product(self, other)

    @property
    def is_one(self) -> bool:
        return not self.first_order and not self.second_order

    @property
    def weight(self) -> int:
        """Total number of points covered: sum of i*exp plus (i+j)*exp"""
        return sum(i * e for i, e in self.first_order) + sum((i + j) * e for (i, j), e in self.second_order)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.first_order) + sum(e for _, e in self.second_order)

    @property
    def second_order_degree(self) -> int:
        return sum(e for _, e in self.second_order)

    def first_order_map(self) -> Dict[int, int]:
        return dict(self.first_order)

    def second_order_map(self) -> Dict[Pair, int]:
        return dict(self.second_order)

    def sort_key(self) -> tuple:
        """Canonical order: total weight, then the expanded index lists"""
        expanded_first = tuple(i for i, e in self.first_order for _ in range(e))
        expanded_second = tuple(p for p, e in self.second_order for _ in range(e))
        return (self.weight, expanded_first, expanded_second)

    def render(self) -> str:
        factors = [f"k{i}" if e == 1 else f"k{i}^{e}" for i, e in self.first_order]
        factors += [f"k{i}_{j}" if e == 1 else f"k{i}_{j}^{e}" for (i, j), e in self.second_order]
        return "*".join(factors)


ONE_MONOMIAL = KappaMonomial()


@lru_cache(maxsize=1 << 18)
def _monomial_product(a: KappaMonomial, b: KappaMonomial) -> KappaMonomial:
    first = dict(a.first_order)
    for index, exponent in b.first_order:
        first[index] = first.get(index, 0) + exponent
    second = dict(a.second_order)
    for pair, exponent in b.second_order:
        second[pair] = second.get(pair, 0) + exponent
    return KappaMonomial(tuple(sorted(first.items())), tuple(sorted(second.items())))


def _as_fraction(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    raise TypeError(f"Unsupported coefficient type {type(value).__name__}")


class KappaPolynomial:
    """
    Exact polynomial in the cumulant indeterminates with rational coefficients.

    Instances are immutable; zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[KappaMonomial, Scalar]] = None):
        cleaned: Dict[KappaMonomial, Fraction] = {}
        for monomial, coeff in (terms or {}).items():
            value = _as_fraction(coeff)
            if value:
                cleaned[monomial] = value
        self._terms = cleaned
        self._hash: Optional[int] = None

    @classmethod
    def _from_clean(cls, terms: Dict[KappaMonomial, Fraction]) -> KappaPolynomial:
        poly = cls.__new__(cls)
        poly._terms = terms
        poly._hash = None
        return poly

    # Constructors

    @classmethod
    def zero(cls) -> KappaPolynomial:
        return cls._from_clean({})

    @classmethod
    def one(cls) -> KappaPolynomial:
        return cls._from_clean({ONE_MONOMIAL: Fraction(1)})

    @classmethod
    def constant(cls, value: Scalar) -> KappaPolynomial:
        return cls({ONE_MONOMIAL: value})

    @classmethod
    def kappa(cls, index: int, exponent: int = 1) -> KappaPolynomial:
        return cls._from_clean({KappaMonomial.kappa(index, exponent): Fraction(1)})

    @classmethod
    def kappa2(cls, i: int, j: int, exponent: int = 1) -> KappaPolynomial:
        return cls._from_clean({KappaMonomial.kappa2(i, j, exponent): Fraction(1)})

    @classmethod
    def lift(cls, value: Union[KappaPolynomial, Scalar]) -> KappaPolynomial:
        if isinstance(value, KappaPolynomial):
            return value
        return cls.constant(value)

    @classmethod
    def parse(cls, text: str) -> KappaPolynomial:
        """
        Parse the canonical rendering, e.g. '4*k1*k3 + k2^2 + 5*k4' or 'k1_2 - 3/2*k1'.

        Raises:
            InvalidInputError: If the text is not a sum of monomials
        """
        compact = text.replace(" ", "")
        if not compact:
            raise InvalidInputError("Empty polynomial text", field="polynomial")
        if compact == "0":
            return cls.zero()
        terms: Dict[KappaMonomial, Fraction] = {}
        for sign, body in re.findall(r"([+-]?)([^+-]+)", compact):
            coeff = Fraction(-1 if sign == "-" else 1)
            first: Dict[int, int] = {}
            second: Dict[Pair, int] = {}
            for factor in body.split("*"):
                if _NUMBER.match(factor):
                    coeff *= Fraction(factor)
                    continue
                match = _FACTOR.match(factor)
                if not match:
                    raise InvalidInputError(f"Cannot parse factor '{factor}' in '{text}'", field="polynomial")
                i = int(match.group(1))
                exponent = int(match.group(3) or 1)
                if match.group(2):
                    key = canonical_pair(i, int(match.group(2)))
                    second[key] = second.get(key, 0) + exponent
                else:
                    first[i] = first.get(i, 0) + exponent
            monomial = KappaMonomial.build(first, second)
            terms[monomial] = terms.get(monomial, Fraction(0)) + coeff
        return cls(terms)

    # Inspection

    def items(self) -> Iterator[Tuple[KappaMonomial, Fraction]]:
        return iter(self._terms.items())

    def monomials(self) -> Iterable[KappaMonomial]:
        return self._terms.keys()

    def coefficient(self, monomial: Union[KappaMonomial, str]) -> Fraction:
        if isinstance(monomial, str):
            parsed = KappaPolynomial.parse(monomial)
            if len(parsed) != 1:
                raise InvalidInputError(f"'{monomial}' is not a single monomial", field="monomial")
            monomial = next(iter(parsed.monomials()))
        return self._terms.get(monomial, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(m.is_one for m in self._terms)

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get(ONE_MONOMIAL, Fraction(0))

    def weights(self) -> set:
        return {m.weight for m in self._terms}

    # Arithmetic

    def __add__(self, other: Union[KappaPolynomial, Scalar]) -> KappaPolynomial:
        other = KappaPolynomial.lift(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        terms = dict(self._terms)
        for monomial, coeff in other._terms.items():
            value = terms.get(monomial, 0) + coeff
            if value:
                terms[monomial] = value
            else:
                terms.pop(monomial, None)
        return KappaPolynomial._from_clean(terms)

    __radd__ = __add__

    def __neg__(self) -> KappaPolynomial:
        return KappaPolynomial._from_clean({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Union[KappaPolynomial, Scalar]) -> KappaPolynomial:
        return self + (-KappaPolynomial.lift(other))

    def __rsub__(self, other: Scalar) -> KappaPolynomial:
        return KappaPolynomial.lift(other) - self

    def scale(self, factor: Scalar) -> KappaPolynomial:
        factor = _as_fraction(factor)
        if not factor:
            return KappaPolynomial.zero()
        if factor == 1:
            return self
        return KappaPolynomial._from_clean({m: c * factor for m, c in self._terms.items()})

    def __mul__(self, other: Union[KappaPolynomial, Scalar]) -> KappaPolynomial:
        if not isinstance(other, KappaPolynomial):
            return self.scale(other)
        if not self._terms or not other._terms:
            return KappaPolynomial.zero()
        terms: Dict[KappaMonomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                monomial = m1 * m2
                terms[monomial] = terms.get(monomial, 0) + c1 * c2
        return KappaPolynomial._from_clean({m: c for m, c in terms.items() if c})

    def __rmul__(self, other: Scalar) -> KappaPolynomial:
        return self.scale(other)

    def __truediv__(self, other: Scalar) -> KappaPolynomial:
        divisor = _as_fraction(other)
        if not divisor:
            raise ZeroDivisionError("Polynomial division by zero")
        return self.scale(1 / divisor)

    def __pow__(self, exponent: int) -> KappaPolynomial:
        if exponent < 0:
            raise InvalidInputError("Polynomials have no negative powers", field="exponent")
        result = KappaPolynomial.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, KappaPolynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == KappaPolynomial.constant(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # Substitution

    def evaluate(
        self,
        first_order: Optional[Mapping[int, Union[KappaPolynomial, Scalar]]] = None,
        second_order: Optional[Mapping[Pair, Union[KappaPolynomial, Scalar]]] = None,
    ) -> KappaPolynomial:
        """
        Substitute indeterminates.

        Indices absent from a map are left untouched.

        Args:
            first_order: Replacement for k_i keyed by i
            second_order: Replacement for k_{i,j} keyed by the canonical pair

        Returns:
            KappaPolynomial: The substituted polynomial
        """
        first = {i: KappaPolynomial.lift(v) for i, v in (first_order or {}).items()}
        second = {canonical_pair(*p): KappaPolynomial.lift(v) for p, v in (second_order or {}).items()}
        result = KappaPolynomial.zero()
        for monomial, coeff in self._terms.items():
            kept_first: Dict[int, int] = {}
            kept_second: Dict[Pair, int] = {}
            factor = KappaPolynomial.constant(coeff)
            for index, exponent in monomial.first_order:
                if index in first:
                    factor = factor * first[index] ** exponent
                else:
                    kept_first[index] = exponent
            for pair, exponent in monomial.second_order:
                if pair in second:
                    factor = factor * second[pair] ** exponent
                else:
                    kept_second[pair] = exponent
            if factor:
                rest = KappaPolynomial._from_clean({KappaMonomial.build(kept_first, kept_second): Fraction(1)})
                result = result + factor * rest
        return result

    def first_order_part(self) -> KappaPolynomial:
        """Drop every monomial containing a second-order cumulant"""
        return KappaPolynomial._from_clean({m: c for m, c in self._terms.items() if not m.second_order})

    def second_order_part(self) -> KappaPolynomial:
        return KappaPolynomial._from_clean({m: c for m, c in self._terms.items() if m.second_order})

    # Rendering

    def sorted_terms(self) -> Tuple[Tuple[KappaMonomial, Fraction], ...]:
        return tuple(sorted(self._terms.items(), key=lambda item: item[0].sort_key()))

    def render(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for monomial, coeff in self.sorted_terms():
            magnitude = abs(coeff)
            body = monomial.render()
            if not body:
                text = str(magnitude)
            elif magnitude == 1:
                text = body
            else:
                text = f"{magnitude}*{body}"
            if not pieces:
                pieces.append(f"-{text}" if coeff < 0 else text)
            else:
                pieces.append(f" - {text}" if coeff < 0 else f" + {text}")
        return "".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"KappaPolynomial('{self.render()}')"


def poly_arith(a: KappaPolynomial, b: KappaPolynomial, op: str) -> KappaPolynomial:
    """
    Exact ring operation on two polynomials

    Args:
        a: Left operand
        b: Right operand
        op: One of 'add', 'sub', 'mul'

    Returns:
        KappaPolynomial: Canonical result
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise InvalidInputError(f"Unknown polynomial operation '{op}'", field="op")
