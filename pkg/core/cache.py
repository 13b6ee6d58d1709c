"""
Local JSON artifact cache keyed by parameter checksums
"""
import hashlib
import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Dict, Any

import structlog

from config import get_cache_config
from core.exceptions import CacheError

logger = structlog.get_logger(__name__)


def parameter_checksum(params: Dict[str, Any]) -> str:
    """
    Stable SHA-256 checksum of a parameter dictionary

    Args:
        params: JSON-serializable job parameters

    Returns:
        str: Hex digest
    """
    payload = json.dumps(params, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class ArtifactCache:
    """File-system cache for computed artifacts"""

    def __init__(self, cache_dir: Optional[str] = None, enabled: Optional[bool] = None):
        config = get_cache_config()
        self.cache_dir = Path(cache_dir or config["cache_dir"])
        self.enabled = config["enabled"] if enabled is None else enabled

    def _path(self, key: str) -> Path:
        return self.cache_dir / f"{key}.json"

    def store_json(self, data: Dict[str, Any], key: str) -> bool:
        """
        Store JSON data under a key

        Args:
            data: Dictionary to store as JSON
            key: Cache key (file stem)

        Returns:
            bool: True if written, False if the cache is disabled
        """
        if not self.enabled:
            return False
        path = self._path(key)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(json.dumps(data, indent=2, sort_keys=True), encoding="utf-8")
            tmp.replace(path)
            logger.debug("cache write", key=key, path=str(path))
            return True
        except OSError as e:
            raise CacheError(f"Error writing cache entry {key}: {e}", operation="store_json")

    def load_json(self, key: str) -> Optional[Dict[str, Any]]:
        """
        Load JSON data for a key

        Args:
            key: Cache key (file stem)

        Returns:
            Optional[Dict]: Stored document, or None on a miss or unreadable entry
        """
        if not self.enabled:
            return None
        path = self._path(key)
        if not path.exists():
            logger.debug("cache miss", key=key)
            return None
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            logger.warning("cache entry unreadable", key=key, error=str(e))
            return None
        logger.debug("cache hit", key=key)
        return data

    def log_operation(self, operation: str, status: str, details: Dict[str, Any]) -> bool:
        """
        Append an operation record to the cache's run log

        Args:
            operation: Operation name (e.g., 'enumerate_genus_table')
            status: Operation status (e.g., 'success', 'error')
            details: Additional details

        Returns:
            bool: True if written, False if the cache is disabled
        """
        if not self.enabled:
            return False
        entry = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "operation": operation,
            "status": status,
            "details": details,
        }
        log_path = self.cache_dir / "logs" / f"{datetime.now(timezone.utc):%Y%m%d}.jsonl"
        try:
            log_path.parent.mkdir(parents=True, exist_ok=True)
            with log_path.open("a", encoding="utf-8") as handle:
                handle.write(json.dumps(entry, sort_keys=True, default=str) + "\n")
            return True
        except OSError as e:
            logger.warning("operation log write failed", operation=operation, error=str(e))
            return False
