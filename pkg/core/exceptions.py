"""
Custom exceptions for the genus counting toolkit
"""
from typing import Optional, Dict, Any


class GenusCountingError(Exception):
    """Base exception for the genus counting toolkit"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        self.message = message
        self.details = details or {}
        super().__init__(self.message)


class TruncationTooLowError(GenusCountingError):
    """Raised when a coefficient outside the known window of a series is requested"""

    def __init__(self, operation: str, degree: int, trunc: Optional[int]):
        self.operation = operation
        self.degree = degree
        self.trunc = trunc
        message = (
            f"{operation}: degree {degree} is not inside the truncation window "
            f"(trunc={trunc}); raise the truncation order"
        )
        super().__init__(message, {"operation": operation, "degree": degree, "trunc": trunc})


class NonInvertibleLeadingError(GenusCountingError):
    """Raised when a series reciprocal is requested but the leading coefficient is not a unit"""

    def __init__(self, message: str, leading: Optional[str] = None):
        self.leading = leading
        super().__init__(message, {"leading": leading})


class NotDivisibleError(GenusCountingError):
    """Raised when an exact bivariate division leaves a remainder"""

    def __init__(self, divisor: str, total_degree: int):
        self.divisor = divisor
        self.total_degree = total_degree
        message = f"Division by {divisor} leaves a remainder at total degree {total_degree}"
        super().__init__(message, {"divisor": divisor, "total_degree": total_degree})


class OddGenusDefectError(GenusCountingError):
    """Raised when the Euler characteristic count is odd"""

    def __init__(self, twice_genus: int, n: int):
        self.twice_genus = twice_genus
        self.n = n
        message = f"Odd value 2g={twice_genus} on {n} points"
        super().__init__(message, {"twice_genus": twice_genus, "n": n})


class DisconnectedError(GenusCountingError):
    """Raised when a permutation pair does not act transitively"""

    def __init__(self, n: int, orbits: int):
        self.n = n
        self.orbits = orbits
        message = f"Permutation pair on {n} points is not transitive ({orbits} orbits)"
        super().__init__(message, {"n": n, "orbits": orbits})


class OracleLimitExceededError(GenusCountingError):
    """Raised when an enumeration oracle is asked for too large a ground set"""

    def __init__(self, kind: str, n: int, limit: int):
        self.kind = kind
        self.n = n
        self.limit = limit
        message = f"{kind} oracle limited to n <= {limit}, got n={n}"
        super().__init__(message, {"kind": kind, "n": n, "limit": limit})


class BadPartitionError(GenusCountingError):
    """Raised when an integer partition does not sum to the ground set size"""

    def __init__(self, parts: Any, n: int):
        self.parts = parts
        self.n = n
        message = f"Parts {list(parts)} do not form a partition of {n}"
        super().__init__(message, {"parts": list(parts), "n": n})


class NotPairwiseDistinctError(GenusCountingError):
    """Raised when block sizes must be pairwise distinct but are not"""

    def __init__(self, sizes: Any):
        self.sizes = sizes
        message = f"Block sizes {tuple(sizes)} are not pairwise distinct"
        super().__init__(message, {"sizes": list(sizes)})


class RegularityViolatedError(GenusCountingError):
    """Raised when a generating function expected to be regular at y=0 has a pole"""

    def __init__(self, genus: int, degree: int):
        self.genus = genus
        self.degree = degree
        message = f"Genus {genus} partition series has a nonzero term at y^{degree}"
        super().__init__(message, {"genus": genus, "degree": degree})


class UnsupportedGenusError(GenusCountingError):
    """Raised when no closed formula is available for the requested genus"""

    def __init__(self, kind: str, genus: int, supported: str):
        self.kind = kind
        self.genus = genus
        message = f"No {kind} generating function for genus {genus}; supported: {supported}"
        super().__init__(message, {"kind": kind, "genus": genus, "supported": supported})


class InvalidInputError(GenusCountingError):
    """Raised when input validation fails"""

    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        super().__init__(message, {"field": field})


class CacheError(GenusCountingError):
    """Raised when cache operations fail"""

    def __init__(self, message: str, operation: str = "unknown"):
        self.operation = operation
        super().__init__(message, {"operation": operation})
