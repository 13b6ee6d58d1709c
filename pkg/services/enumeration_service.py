"""
Exhaustive enumeration oracles for genus tables and annular configurations
"""
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

import structlog

from config import settings
from core.exceptions import InvalidInputError, OracleLimitExceededError
from models.combinatorics import GenusTable, KINDS, cycle_lengths, restricted_growth_strings
from models.kappa import KappaPolynomial
from repositories.table_repository import GenusTableRepository
from services.counting_service import genus_from_images, orbit_count, pair_genus_from_images, type_monomial

logger = structlog.get_logger(__name__)

ShardCounts = Dict[Tuple[int, Tuple[int, ...]], int]

_PREFIX_LENGTH = 4


def _classify(images: Sequence[int], counts: Counter) -> None:
    parts = tuple(sorted(cycle_lengths(images)))
    counts[(genus_from_images(images), parts)] += 1


def _permutation_shard(n: int, first: int) -> ShardCounts:
    """All permutations with images[0] == first"""
    counts: Counter = Counter()
    rest = [v for v in range(n) if v != first]
    for tail in permutations(rest):
        _classify((first,) + tail, counts)
    return dict(counts)


def _rgs_to_images(rgs: Sequence[int]) -> List[int]:
    """Permutation sending each element to the next larger element of its block (cyclically)"""
    n = len(rgs)
    images = [0] * n
    last: Dict[int, int] = {}
    first: Dict[int, int] = {}
    for point, label in enumerate(rgs):
        if label in last:
            images[last[label]] = point
        else:
            first[label] = point
        last[label] = point
    for label, point in last.items():
        images[point] = first[label]
    return images


def _partition_shard(n: int, prefix: Tuple[int, ...]) -> ShardCounts:
    counts: Counter = Counter()
    for rgs in restricted_growth_strings(n, prefix):
        _classify(_rgs_to_images(rgs), counts)
    return dict(counts)


def _shards(n: int, kind: str) -> List[tuple]:
    if kind == "permutation":
        return [(n, first) for first in range(n)]
    depth = min(n, _PREFIX_LENGTH)
    return [(n, prefix) for prefix in restricted_growth_strings(depth)]


def enumerate_genus_table(
    n: int,
    kind: str,
    jobs: Optional[int] = None,
    limit: Optional[int] = None,
) -> GenusTable:
    """
    Brute-force genus table

    Args:
        n: Ground-set size
        kind: 'permutation' or 'partition'
        jobs: Worker processes (defaults to settings.jobs)
        limit: Largest allowed n (defaults to the configured oracle limit)

    Returns:
        GenusTable: Counts per (genus, cycle or block type)

    Raises:
        OracleLimitExceededError: If n exceeds the limit
    """
    if kind not in KINDS:
        raise InvalidInputError(f"Unknown table kind '{kind}'", field="kind")
    if n < 1:
        raise InvalidInputError(f"n must be positive, got {n}", field="n")
    if limit is None:
        limit = settings.permutation_oracle_limit if kind == "permutation" else settings.partition_oracle_limit
    if n > limit:
        raise OracleLimitExceededError(kind, n, limit)

    worker = _permutation_shard if kind == "permutation" else _partition_shard
    shards = _shards(n, kind)
    jobs = jobs or settings.jobs
    logger.info("enumeration started", n=n, kind=kind, shards=len(shards), jobs=jobs)

    table = GenusTable(n, kind)
    if jobs > 1 and len(shards) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            results = list(executor.map(worker, *zip(*shards)))
    else:
        results = [worker(*shard) for shard in shards]
    for shard_counts in results:
        for (genus, parts), count in shard_counts.items():
            table.add(genus, parts, count)

    logger.info("enumeration finished", n=n, kind=kind, total=table.total(), max_genus=table.max_genus)
    return table


def boundary_images(i: int, j: int) -> List[int]:
    """0-based images of tau = (1..i)(i+1..i+j)"""
    first = [(k + 1) % i for k in range(i)]
    second = [i + (k + 1) % j for k in range(j)]
    return first + second


def _planar_annular(i: int, j: int) -> List[Tuple[int, ...]]:
    """Every sigma in S_{i+j} connected with tau and of genus 0"""
    n = i + j
    tau = boundary_images(i, j)
    found = []
    for sigma in permutations(range(n)):
        if orbit_count(sigma, tau) != 1:
            continue
        if pair_genus_from_images(sigma, tau) == 0:
            found.append(sigma)
    return found


def _blocks_of(images: Sequence[int]) -> frozenset:
    n = len(images)
    seen = [False] * n
    blocks = []
    for start in range(n):
        if seen[start]:
            continue
        block = []
        k = start
        while not seen[k]:
            seen[k] = True
            block.append(k)
            k = images[k]
        blocks.append(frozenset(block))
    return frozenset(blocks)


def annular_oracle(i: int, j: int, kind: str, limit: Optional[int] = None) -> KappaPolynomial:
    """
    First-order sector of the planar two-boundary moment by enumeration

    Fixes tau = (1..i)(i+1..i+j) and sums prod k_{|c|} over the connected
    genus-0 sigma. For kind 'part' each sigma is replaced by its block set
    and duplicates are counted once.

    Args:
        i: Points on the first boundary
        j: Points on the second boundary
        kind: 'perm' or 'part'
        limit: Largest allowed i+j (defaults to settings.annular_oracle_limit)

    Returns:
        KappaPolynomial: Polynomial in the first-order cumulants only
    """
    if kind not in ("perm", "part"):
        raise InvalidInputError(f"Unknown cylinder kind '{kind}'", field="kind")
    if i < 1 or j < 1:
        raise InvalidInputError(f"Boundary sizes must be positive, got ({i}, {j})", field="boundary")
    limit = settings.annular_oracle_limit if limit is None else limit
    if i + j > limit:
        raise OracleLimitExceededError("annular", i + j, limit)

    planar = _planar_annular(i, j)
    counts: Counter = Counter()
    if kind == "perm":
        for sigma in planar:
            counts[tuple(sorted(cycle_lengths(sigma)))] += 1
    else:
        for blocks in {_blocks_of(sigma) for sigma in planar}:
            counts[tuple(sorted(len(b) for b in blocks))] += 1
    logger.debug("annular oracle", i=i, j=j, kind=kind, configurations=len(planar))
    return KappaPolynomial({type_monomial(parts): c for parts, c in counts.items()})


class EnumerationService:
    """Service layer for oracle tables with cache reuse"""

    def __init__(self, repository: Optional[GenusTableRepository] = None, jobs: Optional[int] = None,
                 oracle_limit: Optional[int] = None):
        self.repository = repository
        self.jobs = jobs
        self.oracle_limit = oracle_limit

    def get_genus_table(self, n: int, kind: str) -> GenusTable:
        """
        Genus table from the cache, enumerating and storing it on a miss

        Args:
            n: Ground-set size
            kind: 'permutation' or 'partition'

        Returns:
            GenusTable: The table
        """
        if self.repository is not None:
            cached = self.repository.get_table(n, kind)
            if cached is not None:
                logger.info("genus table from cache", n=n, kind=kind)
                return cached
        table = enumerate_genus_table(n, kind, jobs=self.jobs, limit=self.oracle_limit)
        if self.repository is not None:
            self.repository.save_table(table)
        return table

    def warm(self, kinds: Sequence[str], n_max: Optional[Dict[str, int]] = None) -> Dict[str, List[int]]:
        """Populate the cache for every n up to the per-kind maximum"""
        done: Dict[str, List[int]] = {}
        for kind in kinds:
            top = (n_max or {}).get(kind) or (
                settings.permutation_oracle_limit if kind == "permutation" else settings.partition_oracle_limit
            )
            done[kind] = []
            for n in range(1, top + 1):
                self.get_genus_table(n, kind)
                done[kind].append(n)
        return done
