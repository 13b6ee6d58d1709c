"""
Permutations, set partitions, integer partitions and genus tables
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import factorial
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

from core.exceptions import InvalidInputError

KINDS = ("permutation", "partition")


def count_cycles(images: Sequence[int]) -> int:
    """Number of cycles of a 0-based permutation given by its image list"""
    n = len(images)
    seen = [False] * n
    cycles = 0
    for start in range(n):
        if seen[start]:
            continue
        cycles += 1
        i = start
        while not seen[i]:
            seen[i] = True
            i = images[i]
    return cycles


def cycle_lengths(images: Sequence[int]) -> List[int]:
    n = len(images)
    seen = [False] * n
    lengths = []
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = images[i]
            length += 1
        lengths.append(length)
    return lengths


def invert(images: Sequence[int]) -> List[int]:
    inverse = [0] * len(images)
    for i, j in enumerate(images):
        inverse[j] = i
    return inverse


@dataclass(frozen=True)
class IntegerPartition:
    """Nondecreasing list of positive parts"""

    parts: Tuple[int, ...]

    def __post_init__(self):
        if any(p < 1 for p in self.parts):
            raise InvalidInputError(f"Parts must be positive: {self.parts}", field="parts")
        if list(self.parts) != sorted(self.parts):
            raise InvalidInputError(f"Parts must be nondecreasing: {self.parts}", field="parts")

    @classmethod
    def of(cls, parts: Iterable[int]) -> IntegerPartition:
        return cls(tuple(sorted(parts)))

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def multiplicities(self) -> Dict[int, int]:
        return dict(Counter(self.parts))

    def sym(self) -> int:
        """Symmetry factor: product of factorials of part multiplicities"""
        value = 1
        for count in Counter(self.parts).values():
            value *= factorial(count)
        return value

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.parts)) + "]"


def integer_partitions(n: int) -> Iterator[IntegerPartition]:
    """All partitions of n with nondecreasing parts, in lexicographic order"""
    if n < 0:
        return
    if n == 0:
        yield IntegerPartition(())
        return

    def extend(remaining: int, smallest: int) -> Iterator[Tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for part in range(smallest, remaining + 1):
            if part == remaining or remaining - part >= part:
                for rest in extend(remaining - part, part):
                    yield (part,) + rest

    for parts in extend(n, 1):
        yield IntegerPartition(parts)


@dataclass(frozen=True)
class Permutation:
    """Bijection of {1..n}, stored 0-based as an image tuple"""

    images: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise InvalidInputError(f"Not a bijection: {self.images}", field="images")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        """Build from 1-based cycles; points not mentioned are fixed"""
        images = list(range(n))
        seen = set()
        for cycle in cycles:
            for point in cycle:
                if not 1 <= point <= n or point in seen:
                    raise InvalidInputError(f"Bad cycle {tuple(cycle)} on {n} points", field="cycles")
                seen.add(point)
            for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
                images[a - 1] = b - 1
        return cls(tuple(images))

    @classmethod
    def rotation(cls, n: int) -> Permutation:
        """The circular permutation i -> i+1 mod n"""
        return cls(tuple((i + 1) % n for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        """Image of a 1-based point"""
        return self.images[point - 1] + 1

    def inverse(self) -> Permutation:
        return Permutation(tuple(invert(self.images)))

    def compose(self, other: Permutation) -> Permutation:
        """self after other: i -> self(other(i))"""
        return Permutation(tuple(self.images[j] for j in other.images))

    def cycles(self) -> List[Tuple[int, ...]]:
        """1-based cycles, each starting at its smallest element, ordered by that element"""
        seen = set()
        result = []
        for start in range(self.n):
            if start in seen:
                continue
            cycle = []
            i = start
            while i not in seen:
                seen.add(i)
                cycle.append(i + 1)
                i = self.images[i]
            result.append(tuple(cycle))
        return result

    def num_cycles(self) -> int:
        return count_cycles(self.images)

    def cycle_type(self) -> IntegerPartition:
        return IntegerPartition.of(cycle_lengths(self.images))

    def __str__(self) -> str:
        return "".join("(" + ",".join(map(str, c)) + ")" for c in self.cycles())


@dataclass(frozen=True)
class SetPartition:
    """Blocks of {1..n}, each sorted, ordered by minimum element"""

    blocks: Tuple[Tuple[int, ...], ...]
    n: int = field(default=0)

    def __post_init__(self):
        points = sorted(p for block in self.blocks for p in block)
        size = self.n or len(points)
        if points != list(range(1, size + 1)) or any(not block for block in self.blocks):
            raise InvalidInputError(f"Blocks {self.blocks} do not partition 1..{size}", field="blocks")
        canonical = tuple(sorted((tuple(sorted(b)) for b in self.blocks), key=lambda b: b[0]))
        object.__setattr__(self, "blocks", canonical)
        object.__setattr__(self, "n", size)

    @classmethod
    def of(cls, blocks: Iterable[Iterable[int]]) -> SetPartition:
        return cls(tuple(tuple(b) for b in blocks))

    @classmethod
    def from_rgs(cls, rgs: Sequence[int]) -> SetPartition:
        """Decode a restricted growth string (0-based block labels)"""
        blocks: Dict[int, List[int]] = {}
        for point, label in enumerate(rgs, start=1):
            blocks.setdefault(label, []).append(point)
        return cls(tuple(tuple(blocks[k]) for k in sorted(blocks)), len(rgs))

    def to_permutation(self) -> Permutation:
        """Each block becomes the cycle visiting its elements in increasing order"""
        return Permutation.from_cycles(self.n, self.blocks)

    def block_type(self) -> IntegerPartition:
        return IntegerPartition.of(len(b) for b in self.blocks)

    def __str__(self) -> str:
        return "{" + ",".join("(" + ",".join(map(str, b)) + ")" for b in self.blocks) + "}"


def restricted_growth_strings(n: int, prefix: Sequence[int] = ()) -> Iterator[Tuple[int, ...]]:
    """
    All restricted growth strings of length n extending a valid prefix.

    a[0] = 0 and a[i] <= 1 + max(a[:i]); these encode P(n) bijectively.
    """
    if n == 0:
        yield ()
        return
    word = list(prefix) or [0]
    if len(word) > n:
        return

    def extend(word: List[int], top: int) -> Iterator[Tuple[int, ...]]:
        if len(word) == n:
            yield tuple(word)
            return
        for label in range(top + 2):
            word.append(label)
            yield from extend(word, max(top, label))
            word.pop()

    yield from extend(word, max(word))


@dataclass
class GenusTable:
    """Exact counts per (genus, cycle or block type)"""

    n: int
    kind: str
    counts: Dict[Tuple[int, Tuple[int, ...]], int] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInputError(f"Unknown table kind '{self.kind}'", field="kind")

    def add(self, genus: int, parts: Tuple[int, ...], count: int = 1) -> None:
        key = (genus, parts)
        self.counts[key] = self.counts.get(key, 0) + count

    def merge(self, other: GenusTable) -> GenusTable:
        for (genus, parts), count in other.counts.items():
            self.add(genus, parts, count)
        return self

    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def max_genus(self) -> int:
        return max((g for g, _ in self.counts), default=0)

    def count(self, genus: int, parts: Iterable[int]) -> int:
        return self.counts.get((genus, tuple(sorted(parts))), 0)

    def entries(self) -> List[Tuple[int, Tuple[int, ...], int]]:
        """(g, type, count) sorted by (g, type)"""
        return [(g, parts, c) for (g, parts), c in sorted(self.counts.items())]

    def genus(self, g: int) -> Dict[Tuple[int, ...], int]:
        return {parts: c for (genus, parts), c in self.counts.items() if genus == g}
