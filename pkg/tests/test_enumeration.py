"""
Tests for the enumeration oracles and the cached genus table repository
"""
import json

import pytest

from core.cache import ArtifactCache, parameter_checksum
from core.exceptions import InvalidInputError, OracleLimitExceededError
from models.combinatorics import GenusTable
from models.kappa import KappaPolynomial
from repositories.table_repository import GenusTableRepository, table_parameters
from services import enumeration_service
from services.enumeration_service import EnumerationService, annular_oracle, enumerate_genus_table
from services.reference_data import CYLINDER_MOMENTS, CYLINDER_PERMUTATION_FIRST_ORDER


class TestEnumerateGenusTable:
    """Test cases for exhaustive genus tables"""

    def test_single_point(self):
        for kind in ("permutation", "partition"):
            table = enumerate_genus_table(1, kind, jobs=1)
            assert table.entries() == [(0, (1,), 1)]

    def test_permutations_of_three(self):
        table = enumerate_genus_table(3, "permutation", jobs=1)
        assert table.total() == 6
        assert table.count(1, [3]) == 1
        assert table.count(0, [3]) == 1
        assert table.count(0, [1, 2]) == 3
        assert table.count(0, [1, 1, 1]) == 1

    def test_partitions_of_four(self):
        table = enumerate_genus_table(4, "partition", jobs=1)
        assert table.total() == 15
        assert table.genus(1) == {(2, 2): 1}
        assert sum(table.genus(0).values()) == 14

    def test_permutation_totals_are_factorials(self):
        assert [enumerate_genus_table(n, "permutation", jobs=1).total() for n in range(1, 7)] == [
            1, 2, 6, 24, 120, 720,
        ]

    @pytest.mark.slow
    def test_partition_genus_at_most_two_through_seven(self):
        for n in range(1, 8):
            assert enumerate_genus_table(n, "partition", jobs=1).max_genus <= 2

    @pytest.mark.slow
    def test_worker_pool_matches_serial(self):
        serial = enumerate_genus_table(6, "partition", jobs=1)
        pooled = enumerate_genus_table(6, "partition", jobs=2)
        assert pooled.counts == serial.counts

    def test_limit_exceeded(self):
        with pytest.raises(OracleLimitExceededError) as exc:
            enumerate_genus_table(5, "permutation", limit=4)
        assert exc.value.details["limit"] == 4

    def test_bad_arguments(self):
        with pytest.raises(InvalidInputError):
            enumerate_genus_table(0, "permutation")
        with pytest.raises(InvalidInputError):
            enumerate_genus_table(3, "matching")


class TestAnnularOracle:
    """Test cases for two-boundary enumeration"""

    def test_two_single_points(self):
        assert annular_oracle(1, 1, "perm") == KappaPolynomial.kappa(2)
        assert annular_oracle(1, 1, "part") == KappaPolynomial.kappa(2)
        assert annular_oracle(1, 1, "perm") == KappaPolynomial.parse(CYLINDER_PERMUTATION_FIRST_ORDER[(1, 1)])

    def test_two_by_two_permutations(self):
        assert annular_oracle(2, 2, "perm") == KappaPolynomial.parse(CYLINDER_PERMUTATION_FIRST_ORDER[(2, 2)])

    def test_partitions_match_first_order_sector(self):
        for pair in [(1, 2), (2, 2), (1, 3)]:
            expected = KappaPolynomial.parse(CYLINDER_MOMENTS[pair]).first_order_part()
            assert annular_oracle(*pair, "part") == expected

    def test_symmetric_in_boundaries(self):
        assert annular_oracle(1, 3, "perm") == annular_oracle(3, 1, "perm")

    def test_limit_and_arguments(self):
        with pytest.raises(OracleLimitExceededError):
            annular_oracle(3, 3, "perm", limit=5)
        with pytest.raises(InvalidInputError):
            annular_oracle(0, 2, "perm")
        with pytest.raises(InvalidInputError):
            annular_oracle(1, 1, "matching")


class TestEnumerationService:
    """Test cases for cache reuse"""

    def test_second_request_comes_from_cache(self, repository, monkeypatch):
        service = EnumerationService(repository, jobs=1)
        first = service.get_genus_table(4, "permutation")

        def fail(*args, **kwargs):
            raise AssertionError("enumeration should not run on a cache hit")

        monkeypatch.setattr(enumeration_service, "enumerate_genus_table", fail)
        second = service.get_genus_table(4, "permutation")
        assert second.counts == first.counts

    def test_without_repository(self):
        service = EnumerationService(None, jobs=1)
        assert service.get_genus_table(3, "partition").total() == 5

    def test_warm(self, repository):
        service = EnumerationService(repository, jobs=1)
        done = service.warm(["partition"], {"partition": 3})
        assert done == {"partition": [1, 2, 3]}
        assert repository.get_table(3, "partition").total() == 5


class TestGenusTableRepository:
    """Test cases for the on-disk table documents"""

    def setup_method(self):
        self.table = GenusTable(3, "permutation")
        self.table.add(0, (1, 2), 3)
        self.table.add(1, (3,), 1)

    def test_round_trip(self, repository):
        assert repository.save_table(self.table)
        loaded = repository.get_table(3, "permutation")
        assert loaded.counts == self.table.counts

    def test_miss(self, repository):
        assert repository.get_table(5, "partition") is None

    def test_checksum_mismatch_is_rejected(self, repository, cache):
        repository.save_table(self.table)
        key = repository._key(3, "permutation")
        document = cache.load_json(key)
        document["checksum"] = parameter_checksum(table_parameters(4, "permutation"))
        cache.store_json(document, key)
        assert repository.get_table(3, "permutation") is None

    def test_invalid_document_is_rejected(self, repository, cache):
        cache.store_json({"n": 3}, repository._key(3, "permutation"))
        assert repository.get_table(3, "permutation") is None

    def test_unreadable_file_is_a_miss(self, repository, cache):
        path = cache.cache_dir / f"{repository._key(3, 'permutation')}.json"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("{not json", encoding="utf-8")
        assert repository.get_table(3, "permutation") is None

    def test_disabled_cache(self, tmp_path):
        repository = GenusTableRepository(ArtifactCache(cache_dir=str(tmp_path), enabled=False))
        assert not repository.save_table(self.table)
        assert repository.get_table(3, "permutation") is None


class TestArtifactCache:
    """Test cases for the artifact cache"""

    def test_checksum_is_order_independent(self):
        assert parameter_checksum({"a": 1, "b": 2}) == parameter_checksum({"b": 2, "a": 1})
        assert parameter_checksum({"a": 1}) != parameter_checksum({"a": 2})

    def test_operation_log(self, cache):
        assert cache.log_operation("warm_cache", "success", {"tables": 3})
        logs = list((cache.cache_dir / "logs").glob("*.jsonl"))
        assert len(logs) == 1
        entry = json.loads(logs[0].read_text(encoding="utf-8").strip())
        assert entry["operation"] == "warm_cache"
        assert entry["details"] == {"tables": 3}
