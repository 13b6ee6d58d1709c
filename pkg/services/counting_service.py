"""
Genus of permutations and partitions, and the classical closed counting formulas
"""
from dataclasses import dataclass
from math import comb, factorial, prod
from typing import Dict, Iterable, List, Sequence, Tuple

from core.exceptions import BadPartitionError, DisconnectedError, InvalidInputError, OddGenusDefectError
from models.combinatorics import GenusTable, IntegerPartition, Permutation, SetPartition, count_cycles, invert
from models.kappa import KappaMonomial, KappaPolynomial


def _halve(twice_genus: int, n: int) -> int:
    if twice_genus % 2:
        raise OddGenusDefectError(twice_genus, n)
    return twice_genus // 2


def genus_from_images(images: Sequence[int]) -> int:
    """Genus of a 0-based permutation: 2g = n + 1 - l(s) - l(s^-1 . rotation)"""
    n = len(images)
    inverse = invert(images)
    composed = [inverse[(i + 1) % n] for i in range(n)]
    return _halve(n + 1 - count_cycles(images) - count_cycles(composed), n)


def genus_of_permutation(sigma: Permutation) -> int:
    """
    Genus of a permutation relative to the circular permutation

    Args:
        sigma: Permutation of {1..n}, n >= 1

    Returns:
        int: g with 2g = n + 1 - l(sigma) - l(sigma^-1 zeta_n)

    Raises:
        OddGenusDefectError: If the count is odd
    """
    if sigma.n < 1:
        raise InvalidInputError("Genus needs at least one point", field="n")
    return genus_from_images(sigma.images)


def genus_of_partition(partition: SetPartition) -> int:
    """Genus of the permutation traversing each block in increasing order"""
    return genus_of_permutation(partition.to_permutation())


def orbit_count(*generators: Sequence[int]) -> int:
    """Number of orbits of the group generated by 0-based permutations"""
    n = len(generators[0])
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    orbits = n
    for images in generators:
        for i, j in enumerate(images):
            a, b = find(i), find(j)
            if a != b:
                parent[a] = b
                orbits -= 1
    return orbits


def pair_genus_from_images(sigma: Sequence[int], tau: Sequence[int]) -> int:
    n = len(sigma)
    orbits = orbit_count(sigma, tau)
    if orbits != 1:
        raise DisconnectedError(n, orbits)
    inverse = invert(sigma)
    composed = [inverse[tau[i]] for i in range(n)]
    twice_genus = n + 2 - count_cycles(tau) - count_cycles(sigma) - count_cycles(composed)
    return _halve(twice_genus, n)


def genus_of_pair(sigma: Permutation, tau: Permutation) -> int:
    """
    Genus of a permutation relative to a boundary permutation with b cycles

    Args:
        sigma: Permutation of {1..n}
        tau: Boundary permutation of {1..n}

    Returns:
        int: g with 2g = n + 2 - b - l(sigma) - l(sigma^-1 tau)

    Raises:
        DisconnectedError: If <sigma, tau> is not transitive
        OddGenusDefectError: If the count is odd
    """
    if sigma.n != tau.n:
        raise InvalidInputError(f"Size mismatch: {sigma.n} vs {tau.n}", field="tau")
    return pair_genus_from_images(sigma.images, tau.images)


def _check_partition(n: int, a: IntegerPartition) -> None:
    if a.n != n:
        raise BadPartitionError(a.parts, n)


def count_cycle_type(n: int, a: IntegerPartition) -> int:
    """Permutations of n with cycle type a: n! / (sym(a) prod a_i)"""
    _check_partition(n, a)
    return factorial(n) // (a.sym() * prod(a.parts))


def count_block_type(n: int, a: IntegerPartition) -> int:
    """Set partitions of n with block sizes a: n! / (sym(a) prod a_i!)"""
    _check_partition(n, a)
    return factorial(n) // (a.sym() * prod(factorial(p) for p in a.parts))


@dataclass(frozen=True)
class StirlingTables:
    """Signed Stirling numbers of both kinds and Bell numbers up to n_max"""

    n_max: int
    first_kind: Tuple[Tuple[int, ...], ...]
    second_kind: Tuple[Tuple[int, ...], ...]
    bell: Tuple[int, ...]

    def s(self, n: int, k: int) -> int:
        return self.first_kind[n][k] if 0 <= k <= n else 0

    def S(self, n: int, k: int) -> int:
        return self.second_kind[n][k] if 0 <= k <= n else 0


def stirling_and_bell(n_max: int) -> StirlingTables:
    """
    Stirling numbers and Bell numbers for 0 <= n <= n_max

    s(n, k) are the coefficients of the falling factorial x(x-1)...(x-n+1);
    S(n, k) follow S(n+1, k) = k S(n, k) + S(n, k-1); B_{n+1} = sum_k C(n, k) B_k.
    """
    if n_max < 0:
        raise InvalidInputError(f"n_max must be nonnegative, got {n_max}", field="n_max")
    first: List[List[int]] = [[1]]
    second: List[List[int]] = [[1]]
    for n in range(n_max):
        prev_s, prev_S = first[-1], second[-1]
        row_s = [0] * (n + 2)
        row_S = [0] * (n + 2)
        for k in range(n + 2):
            below = prev_s[k - 1] if k >= 1 else 0
            same = prev_s[k] if k <= n else 0
            row_s[k] = below - n * same
            below_S = prev_S[k - 1] if k >= 1 else 0
            same_S = prev_S[k] if k <= n else 0
            row_S[k] = k * same_S + below_S
        first.append(row_s)
        second.append(row_S)
    bell = [1]
    for n in range(n_max):
        bell.append(sum(comb(n, k) * bell[k] for k in range(n + 1)))
    return StirlingTables(
        n_max,
        tuple(tuple(r) for r in first),
        tuple(tuple(r) for r in second),
        tuple(bell),
    )


def type_monomial(parts: Iterable[int]) -> KappaMonomial:
    exponents: Dict[int, int] = {}
    for p in parts:
        exponents[p] = exponents.get(p, 0) + 1
    return KappaMonomial.build(exponents)


def moments_from_table(table: GenusTable, g: int) -> KappaPolynomial:
    """
    Oracle-side moment polynomial: sum of counts times prod k_{a_i}

    Args:
        table: Enumerated genus table
        g: Genus

    Returns:
        KappaPolynomial: The genus-g moment of size table.n
    """
    return KappaPolynomial({type_monomial(parts): count for parts, count in table.genus(g).items()})
