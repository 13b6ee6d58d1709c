"""
Tests for the partition generating functions, their moments and the closed counts
"""
from fractions import Fraction

import pytest

from core.exceptions import InvalidInputError, NotPairwiseDistinctError, RegularityViolatedError, UnsupportedGenusError
from models.kappa import KappaMonomial, KappaPolynomial
from models.kappa_spec import KappaSpec
from services import partition_genfun
from services.counting_service import moments_from_table
from services.cumulant_curve import generic_curve
from services.enumeration_service import enumerate_genus_table
from services.partition_genfun import (
    BracketTerm,
    PartitionGfg,
    faa_di_bruno_m1,
    m_coefficient,
    m_coefficients,
    partition_plan,
    specialize_partition_series,
    three_block_m1,
    w_par_genus,
)
from services.reference_data import FAA_DI_BRUNO_ANCHORS, PARTITION_MOMENTS, THREE_BLOCK_ANCHORS


class TestPartitionSeries:
    """Test cases for the genus-1 and genus-2 series"""

    def test_plans(self):
        assert len(partition_plan(1).terms) == 2
        assert len(partition_plan(2).terms) == 15

    def test_unsupported_genus(self):
        for g in (0, 3):
            with pytest.raises(UnsupportedGenusError):
                partition_plan(g)
        with pytest.raises(UnsupportedGenusError):
            m_coefficient(3, 8)

    def test_series_are_regular(self):
        curve = generic_curve(8, 9)
        for g in (1, 2):
            W = w_par_genus(g, curve.X, curve=curve)
            assert all(degree >= 0 for degree in W.terms())

    def test_pole_raises(self, monkeypatch):
        # y^-6 / X'^2 starts at y^-2, so one d/dX leaves a y^-1 term
        broken = PartitionGfg(1, (BracketTerm(Fraction(1), 6, 2),))
        monkeypatch.setitem(partition_genfun.PLANS, 1, broken)
        curve = generic_curve(6, 7)
        with pytest.raises(RegularityViolatedError):
            w_par_genus(1, curve.X, curve=curve)


class TestMomentCoefficients:
    """Test cases for generic partition moments"""

    @pytest.mark.parametrize("g,n", sorted(PARTITION_MOMENTS))
    def test_published_table(self, g, n):
        assert m_coefficient(g, n) == KappaPolynomial.parse(PARTITION_MOMENTS[(g, n)])

    def test_below_first_nonzero_size(self):
        polys = m_coefficients(1, range(1, 4))
        assert all(p == 0 for p in polys.values())
        assert m_coefficient(2, 5) == 0

    def test_cutoff_below_n_rejected(self):
        with pytest.raises(InvalidInputError):
            m_coefficient(1, 6, K=5)

    @pytest.mark.slow
    def test_matches_enumeration(self):
        for n in range(1, 9):
            table = enumerate_genus_table(n, "partition", jobs=1)
            polys = {g: m_coefficient(g, n) for g in (1, 2)}
            for g, poly in polys.items():
                assert poly == moments_from_table(table, g)

    def test_bell_sum(self):
        bell = [1, 1, 2, 5, 15, 52, 203, 877]
        spec = KappaSpec.of("bell")
        by_genus = [specialize_partition_series(g, spec, 7) for g in range(3)]
        for n in range(8):
            total = sum(series[n].as_rational() for series in by_genus)
            assert total == bell[n]

    def test_genus_zero_is_planar_permutation_series(self):
        catalan = ["1", "1", "2", "5", "14", "42"]
        values = specialize_partition_series(0, KappaSpec.of("bell"), 5)
        assert [v.render() for v in values] == catalan


class TestClosedCounts:
    """Test cases for the closed genus-1 counts"""

    @pytest.mark.parametrize("p,k", sorted(FAA_DI_BRUNO_ANCHORS))
    def test_equal_blocks_anchors(self, p, k):
        assert faa_di_bruno_m1(p, k) == FAA_DI_BRUNO_ANCHORS[(p, k)]

    @pytest.mark.parametrize("sizes", sorted(THREE_BLOCK_ANCHORS))
    def test_three_block_anchors(self, sizes):
        assert three_block_m1(*sizes) == THREE_BLOCK_ANCHORS[sizes]

    def test_equal_blocks_degenerate(self):
        assert faa_di_bruno_m1(1, 4) == 0
        assert faa_di_bruno_m1(3, 1) == 0

    def test_equal_blocks_match_residues(self):
        polys = m_coefficients(1, range(4, 11))
        for p in range(2, 6):
            for k in range(2, 10 // p + 1):
                assert polys[p * k].coefficient(KappaMonomial.kappa(p, k)) == faa_di_bruno_m1(p, k)

    def test_three_blocks_match_residues(self):
        polys = m_coefficients(1, range(6, 10))
        for sizes in [(1, 2, 3), (1, 2, 4), (1, 3, 4), (1, 2, 5), (2, 3, 4), (1, 2, 6), (1, 3, 5)]:
            monomial = KappaMonomial.build({s: 1 for s in sizes})
            assert polys[sum(sizes)].coefficient(monomial) == three_block_m1(*sizes)

    def test_symmetric_in_sizes(self):
        assert three_block_m1(3, 1, 2) == three_block_m1(1, 2, 3)

    def test_sizes_must_be_distinct(self):
        with pytest.raises(NotPairwiseDistinctError):
            three_block_m1(2, 2, 3)
        with pytest.raises(InvalidInputError):
            three_block_m1(0, 2, 3)
