"""
Cache warm-up script - enumerates every oracle genus table up to the configured limits
"""
import os
import sys
import time
from typing import Dict, List

# Add parent directory to path to import modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import structlog

from config import settings, get_oracle_limits
from core.cache import ArtifactCache
from core.exceptions import GenusCountingError
from core.log_config import configure_logging
from models.combinatorics import KINDS
from repositories.table_repository import GenusTableRepository
from services.enumeration_service import EnumerationService

logger = structlog.get_logger(__name__)


def main() -> Dict[str, List[int]]:
    """Warm the genus table cache for both kinds"""
    limits = get_oracle_limits()
    cache = ArtifactCache()
    service = EnumerationService(GenusTableRepository(cache), jobs=settings.jobs)
    started = time.monotonic()
    logger.info("cache warm-up started", cache_dir=str(cache.cache_dir), limits=limits, jobs=settings.jobs)
    try:
        done = service.warm(KINDS, {kind: limits[kind] for kind in KINDS})
    except GenusCountingError as e:
        cache.log_operation("warm_cache", "error", {"error": e.message, **e.details})
        raise
    elapsed = round(time.monotonic() - started, 2)
    cache.log_operation("warm_cache", "success", {"tables": done, "seconds": elapsed})
    logger.info("cache warm-up finished", tables=done, seconds=elapsed)
    return done


if __name__ == "__main__":
    configure_logging("INFO", settings.log_format)

    try:
        result = main()
        print(f"Cached tables: {result}")
        sys.exit(0)
    except GenusCountingError as e:
        print(f"Warm-up failed: {e.message}", file=sys.stderr)
        sys.exit(1)
