"""
Shared pytest fixtures
"""
import pytest

from core.cache import ArtifactCache
from core.log_config import configure_logging
from repositories.table_repository import GenusTableRepository

configure_logging("WARNING")


@pytest.fixture
def cache(tmp_path):
    """Artifact cache in a temporary directory"""
    return ArtifactCache(cache_dir=str(tmp_path / "cache"), enabled=True)


@pytest.fixture
def repository(cache):
    return GenusTableRepository(cache)
