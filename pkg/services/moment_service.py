"""
Moment service: dispatches moment and series requests by counting kind
"""
from typing import Dict, Iterable, List, Optional

import structlog

from core.exceptions import InvalidInputError, UnsupportedGenusError
from models.combinatorics import KINDS
from models.kappa import KappaPolynomial
from models.kappa_spec import KappaSpec, SpecializedValue
from models.schemas import HbarRow
from services import partition_genfun, permutation_genfun

logger = structlog.get_logger(__name__)

# Generating functions for partitions exist up to genus 2
PARTITION_MAX_GENUS = 2


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise InvalidInputError(f"Unknown kind '{kind}', expected one of {', '.join(KINDS)}", field="kind")


def default_max_genus(kind: str, n_max: int) -> int:
    """Largest genus with nonzero moments up to n_max (capped for partitions)"""
    top = max((n_max - 1) // 2, 0)
    return min(top, PARTITION_MAX_GENUS) if kind == "partition" else top


class MomentService:
    """Service layer for moment polynomials and specialized series"""

    def __init__(self, cutoff: Optional[int] = None, margin: Optional[int] = None):
        self.cutoff = cutoff
        self.margin = margin

    def moment_polynomials(self, kind: str, g: int, n_values: Iterable[int]) -> Dict[int, KappaPolynomial]:
        """
        Generic moment polynomials alpha_n^(g) or m_n^(g)

        Args:
            kind: 'permutation' or 'partition'
            g: Genus
            n_values: Moment sizes

        Returns:
            Dict[int, KappaPolynomial]: Polynomials keyed by n

        Raises:
            UnsupportedGenusError: For partitions of genus above 2
        """
        _check_kind(kind)
        ns = list(n_values)
        cutoff = self.cutoff
        if cutoff is not None and ns and cutoff < max(ns):
            logger.info("cutoff raised to cover n", cutoff=cutoff, n_max=max(ns))
            cutoff = max(ns)
        if kind == "permutation" or g == 0:
            return permutation_genfun.alpha_coefficients(g, ns, cutoff, self.margin)
        if g > PARTITION_MAX_GENUS:
            raise UnsupportedGenusError("partition", g, "0, 1, 2")
        return partition_genfun.m_coefficients(g, ns, cutoff, self.margin)

    def specialized_series(self, kind: str, g: int, spec: KappaSpec, n_max: int) -> List[SpecializedValue]:
        """Coefficients of 1/x^(n+1) in W^(g) under a specialization, n = 0..n_max"""
        _check_kind(kind)
        if kind == "permutation":
            return permutation_genfun.specialize_series(g, spec, n_max, self.margin)
        if g > PARTITION_MAX_GENUS:
            raise UnsupportedGenusError("partition", g, "0, 1, 2")
        return partition_genfun.specialize_partition_series(g, spec, n_max, self.margin)

    def hbar_table(self, kind: str, spec: KappaSpec, n_max: int, g_max: Optional[int] = None) -> List[HbarRow]:
        """
        Genus-graded coefficient table and its sum at hbar = 1

        Args:
            kind: 'permutation' or 'partition'
            spec: Specialization
            n_max: Largest moment size
            g_max: Largest genus (defaults to the largest that contributes)

        Returns:
            List[HbarRow]: One row per n = 0..n_max
        """
        _check_kind(kind)
        if g_max is None:
            g_max = default_max_genus(kind, n_max)
        by_genus = [self.specialized_series(kind, g, spec, n_max) for g in range(g_max + 1)]
        rows = []
        for n in range(n_max + 1):
            values = [series[n] for series in by_genus]
            total = SpecializedValue()
            for value in values:
                total = total + value
            rows.append(HbarRow(
                kind=kind,
                spec=spec.preset.value,
                n=n,
                by_genus=[v.render() for v in values],
                total=total.render(),
            ))
        logger.info("hbar table built", kind=kind, spec=spec.preset.value, n_max=n_max, g_max=g_max)
        return rows
