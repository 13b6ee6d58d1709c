"""
Genus table repository backed by the artifact cache
"""
from typing import Any, Dict, Optional

import structlog
from pydantic import ValidationError

from core.cache import ArtifactCache, parameter_checksum
from models.combinatorics import GenusTable
from models.schemas import SCHEMA_VERSION, GenusTableDocument, GenusTableEntry

logger = structlog.get_logger(__name__)


def table_parameters(n: int, kind: str) -> Dict[str, Any]:
    return {"artifact": "genus_table", "schema_version": SCHEMA_VERSION, "n": n, "kind": kind}


def table_to_document(table: GenusTable, checksum: Optional[str] = None) -> GenusTableDocument:
    """Serialize a table with entries sorted by (g, type)"""
    return GenusTableDocument(
        n=table.n,
        kind=table.kind,
        checksum=checksum,
        entries=[GenusTableEntry(g=g, type=list(parts), count=c) for g, parts, c in table.entries()],
    )


def document_to_table(document: GenusTableDocument) -> GenusTable:
    table = GenusTable(document.n, document.kind)
    for entry in document.entries:
        table.add(entry.g, tuple(entry.type), entry.count)
    return table


class GenusTableRepository:
    """Repository for cached genus tables"""

    def __init__(self, cache: Optional[ArtifactCache] = None):
        self.cache = cache or ArtifactCache()

    def _key(self, n: int, kind: str) -> str:
        return f"genus_table_{kind}_{n}_{parameter_checksum(table_parameters(n, kind))[:16]}"

    def get_table(self, n: int, kind: str) -> Optional[GenusTable]:
        """
        Load a cached table

        Args:
            n: Ground-set size
            kind: 'permutation' or 'partition'

        Returns:
            Optional[GenusTable]: The table, or None on a miss or a stale entry
        """
        data = self.cache.load_json(self._key(n, kind))
        if data is None:
            return None
        try:
            document = GenusTableDocument.model_validate(data)
        except ValidationError as e:
            logger.warning("cached table invalid", n=n, kind=kind, error=str(e))
            return None
        expected = parameter_checksum(table_parameters(n, kind))
        if document.checksum != expected or document.schema_version != SCHEMA_VERSION:
            logger.warning("cached table stale", n=n, kind=kind)
            return None
        return document_to_table(document)

    def save_table(self, table: GenusTable) -> bool:
        """
        Store a table

        Args:
            table: Enumerated table

        Returns:
            bool: True if written
        """
        checksum = parameter_checksum(table_parameters(table.n, table.kind))
        document = table_to_document(table, checksum)
        written = self.cache.store_json(document.model_dump(), self._key(table.n, table.kind))
        if written:
            self.cache.log_operation("save_table", "success", {"n": table.n, "kind": table.kind})
        return written
