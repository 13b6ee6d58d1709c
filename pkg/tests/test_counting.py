"""
Tests for the genus of permutations, partitions and boundary pairs, and the closed counts
"""
from math import factorial

import pytest
from sympy.functions.combinatorial.numbers import bell, stirling

from core.exceptions import BadPartitionError, DisconnectedError, InvalidInputError
from models.combinatorics import (
    GenusTable,
    IntegerPartition,
    Permutation,
    SetPartition,
    integer_partitions,
    restricted_growth_strings,
)
from models.kappa import KappaPolynomial
from services.counting_service import (
    count_block_type,
    count_cycle_type,
    genus_of_pair,
    genus_of_partition,
    genus_of_permutation,
    moments_from_table,
    orbit_count,
    stirling_and_bell,
)
from services.enumeration_service import boundary_images


class TestCombinatorics:
    """Test cases for the combinatorial value types"""

    def test_from_cycles_and_back(self):
        sigma = Permutation.from_cycles(5, [(1, 3), (2, 5, 4)])
        assert sigma(1) == 3 and sigma(5) == 4
        assert sigma.cycles() == [(1, 3), (2, 5, 4)]
        assert sigma.cycle_type().parts == (2, 3)
        assert sigma.compose(sigma.inverse()) == Permutation.identity(5)

    def test_bad_cycles_rejected(self):
        with pytest.raises(InvalidInputError):
            Permutation.from_cycles(3, [(1, 4)])
        with pytest.raises(InvalidInputError):
            Permutation.from_cycles(3, [(1, 2), (2, 3)])

    def test_set_partition_canonical_form(self):
        partition = SetPartition.of([(4, 2), (3, 1)])
        assert partition.blocks == ((1, 3), (2, 4))
        assert partition.block_type().parts == (2, 2)
        assert partition.to_permutation() == Permutation.from_cycles(4, [(1, 3), (2, 4)])

    def test_rgs_count_is_bell(self):
        for n in range(1, 8):
            assert sum(1 for _ in restricted_growth_strings(n)) == bell(n)

    def test_rgs_prefix_restricts(self):
        words = list(restricted_growth_strings(4, (0, 1)))
        assert all(w[:2] == (0, 1) for w in words)
        assert len(words) == 10
        assert SetPartition.from_rgs((0, 1, 0, 1)).blocks == ((1, 3), (2, 4))

    def test_integer_partitions(self):
        parts = [p.parts for p in integer_partitions(4)]
        assert parts == [(1, 1, 1, 1), (1, 1, 2), (1, 3), (2, 2), (4,)]
        assert IntegerPartition.of([2, 1, 2]).sym() == 2

    def test_genus_table_accumulates(self):
        table = GenusTable(3, "permutation")
        table.add(0, (1, 2))
        table.add(0, (1, 2), 2)
        table.add(1, (3,))
        assert table.count(0, [2, 1]) == 3
        assert table.total() == 4
        assert table.max_genus == 1
        assert table.entries() == [(0, (1, 2), 3), (1, (3,), 1)]

    def test_genus_table_kind_is_checked(self):
        with pytest.raises(InvalidInputError):
            GenusTable(3, "matching")


class TestGenus:
    """Test cases for the genus functions"""

    def test_planar_extremes(self):
        for n in range(1, 8):
            assert genus_of_permutation(Permutation.identity(n)) == 0
            assert genus_of_permutation(Permutation.rotation(n)) == 0

    def test_reverse_rotation_on_three_points(self):
        assert genus_of_permutation(Permutation.from_cycles(3, [(1, 3, 2)])) == 1

    def test_crossing_partition(self):
        assert genus_of_partition(SetPartition.of([(1, 3), (2, 4)])) == 1
        assert genus_of_partition(SetPartition.of([(1, 4), (2, 3)])) == 0

    def test_noncrossing_partitions_are_catalan(self):
        catalan = [1, 1, 2, 5, 14, 42, 132]
        for n in range(1, 7):
            planar = sum(
                1 for rgs in restricted_growth_strings(n) if genus_of_partition(SetPartition.from_rgs(rgs)) == 0
            )
            assert planar == catalan[n]

    def test_pair_genus_single_points(self):
        tau = Permutation(tuple(boundary_images(1, 1)))
        assert tau == Permutation.identity(2)
        assert genus_of_pair(Permutation.from_cycles(2, [(1, 2)]), tau) == 0

    def test_pair_genus_connects_two_boundaries(self):
        tau = Permutation(tuple(boundary_images(2, 2)))
        assert tau == Permutation.from_cycles(4, [(1, 2), (3, 4)])
        # one chord from each boundary joined into a single cycle
        sigma = Permutation.from_cycles(4, [(1, 3)])
        assert genus_of_pair(sigma, tau) == 0

    def test_disconnected_pair_raises(self):
        tau = Permutation(tuple(boundary_images(2, 2)))
        with pytest.raises(DisconnectedError):
            genus_of_pair(Permutation.identity(4), tau)

    def test_orbit_count(self):
        assert orbit_count([1, 0, 2, 3], [0, 1, 3, 2]) == 2
        assert orbit_count([1, 2, 3, 0]) == 1


class TestClosedCounts:
    """Test cases for the closed counting formulas"""

    def test_cycle_type_counts(self):
        assert count_cycle_type(4, IntegerPartition.of([2, 2])) == 3
        assert count_cycle_type(4, IntegerPartition.of([1, 3])) == 8
        for n in range(1, 8):
            assert sum(count_cycle_type(n, a) for a in integer_partitions(n)) == factorial(n)

    def test_block_type_counts(self):
        assert count_block_type(4, IntegerPartition.of([2, 2])) == 3
        for n in range(1, 8):
            assert sum(count_block_type(n, a) for a in integer_partitions(n)) == bell(n)

    def test_partition_of_wrong_size_raises(self):
        with pytest.raises(BadPartitionError):
            count_cycle_type(5, IntegerPartition.of([2, 2]))
        with pytest.raises(BadPartitionError):
            count_block_type(3, IntegerPartition.of([2, 2]))

    def test_stirling_and_bell_match_sympy(self):
        tables = stirling_and_bell(10)
        for n in range(11):
            assert tables.bell[n] == bell(n)
            for k in range(n + 1):
                assert tables.s(n, k) == stirling(n, k, kind=1, signed=True)
                assert tables.S(n, k) == stirling(n, k, kind=2)

    def test_negative_size_rejected(self):
        with pytest.raises(InvalidInputError):
            stirling_and_bell(-1)

    def test_moments_from_table(self):
        table = GenusTable(4, "partition")
        table.add(0, (1, 3), 4)
        table.add(1, (2, 2), 1)
        assert moments_from_table(table, 1) == KappaPolynomial.parse("k2^2")
        assert moments_from_table(table, 0) == KappaPolynomial.parse("4*k1*k3")
        assert moments_from_table(table, 2) == 0
