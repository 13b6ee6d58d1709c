"""
Command handlers behind the CLI subcommands
"""
import argparse
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

import pandas as pd
import structlog
from pydantic import BaseModel

from config import settings
from core.cache import ArtifactCache, parameter_checksum
from core.exceptions import InvalidInputError
from models.kappa import KappaPolynomial
from models.kappa_spec import BivariateCumulantSpec, KappaSpec, Preset
from models.schemas import (
    CylinderRecord,
    GenusTableDocument,
    HbarRow,
    JobConfig,
    MomentRecord,
    SeriesRecord,
    VerificationReport,
)
from repositories.table_repository import GenusTableRepository, table_parameters, table_to_document
from services.cylinder_service import grid, m2_coefficients
from services.enumeration_service import EnumerationService
from services.moment_service import MomentService
from services.verification_service import VerificationService

logger = structlog.get_logger(__name__)


@dataclass
class CommandOutput:
    """Records produced by one command and the exit code they imply"""

    records: List[BaseModel] = field(default_factory=list)
    exit_code: int = 0


def parse_range(text: str) -> List[int]:
    """
    Parse '4..10', '1,3,5' or '7' into a sorted list of integers

    Raises:
        argparse.ArgumentTypeError: On malformed input
    """
    values = set()
    try:
        for piece in text.split(","):
            piece = piece.strip()
            if ".." in piece:
                low, high = (int(x) for x in piece.split("..", 1))
                if low > high:
                    raise argparse.ArgumentTypeError(f"empty range '{piece}'")
                values.update(range(low, high + 1))
            elif piece:
                values.add(int(piece))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid range '{text}'")
    if not values:
        raise argparse.ArgumentTypeError(f"empty range '{text}'")
    return sorted(values)


def parse_kappa_values(text: str) -> Dict[int, str]:
    """Parse '1=0,2=1,3=1/2' into explicit cumulant values"""
    values: Dict[int, str] = {}
    try:
        for piece in text.split(","):
            index, value = piece.split("=", 1)
            Fraction(value.strip())
            values[int(index)] = value.strip()
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid cumulant values '{text}'")
    return values


def _spec_for(cfg: JobConfig) -> KappaSpec:
    if cfg.preset == Preset.CUSTOM:
        return KappaSpec.custom({i: Fraction(v) for i, v in cfg.kappa_values.items()})
    return KappaSpec.of(cfg.preset)


def _enumeration(cfg: JobConfig) -> EnumerationService:
    cache = ArtifactCache(cache_dir=cfg.cache_dir)
    return EnumerationService(GenusTableRepository(cache), jobs=cfg.jobs, oracle_limit=cfg.oracle_limit)


def _moments(cfg: JobConfig) -> MomentService:
    return MomentService(cutoff=cfg.cutoff, margin=cfg.margin)


def cmd_table(cfg: JobConfig) -> CommandOutput:
    """Genus tables by enumeration, reusing cached tables"""
    kind = cfg.kind or "permutation"
    service = _enumeration(cfg)
    records = []
    for n in cfg.n_values:
        table = service.get_genus_table(n, kind)
        records.append(table_to_document(table, parameter_checksum(table_parameters(n, kind))))
    return CommandOutput(records)


def cmd_moments(cfg: JobConfig) -> CommandOutput:
    """Generic moment polynomials, or their values under a preset"""
    kind = cfg.kind or "permutation"
    service = _moments(cfg)
    records = []
    for g in cfg.g_values:
        if cfg.preset is None:
            polys = service.moment_polynomials(kind, g, cfg.n_values)
            for n in cfg.n_values:
                records.append(MomentRecord(kind=kind, g=g, n=n, poly=polys[n].render()))
        else:
            spec = _spec_for(cfg)
            values = service.specialized_series(kind, g, spec, max(cfg.n_values))
            for n in cfg.n_values:
                records.append(MomentRecord(kind=kind, g=g, n=n, poly=values[n].render(), spec=spec.preset.value))
    return CommandOutput(records)


def cmd_cylinder(cfg: JobConfig) -> CommandOutput:
    """Planar cylinder moments over the requested (i, j) grid"""
    kind = cfg.kind or "part"
    pairs = grid(cfg.i_values, cfg.j_values)
    spec = None
    if cfg.cutoff is not None:
        cutoff = cfg.cutoff
        total = max(i + j for i, j in pairs)
        if cutoff < total:
            logger.info("cutoff raised to cover i+j", cutoff=cutoff, total=total)
            cutoff = total
        spec = BivariateCumulantSpec.generic(cutoff, cutoff, with_second_order=not cfg.second_order_zero)
    polys = m2_coefficients(kind, pairs, spec=spec, second_order_zero=cfg.second_order_zero, margin=cfg.margin)
    return CommandOutput([CylinderRecord(kind=kind, i=i, j=j, poly=polys[(i, j)].render()) for i, j in pairs])


def cmd_series(cfg: JobConfig) -> CommandOutput:
    """Specialized coefficient sequences and the genus-graded table with its sum"""
    kind = cfg.kind or "permutation"
    if cfg.preset is None:
        raise InvalidInputError("series needs a specialization preset", field="preset")
    spec = _spec_for(cfg)
    service = _moments(cfg)
    n_max = max(cfg.n_values)
    records: List[BaseModel] = []
    for g in cfg.g_values:
        values = service.specialized_series(kind, g, spec, n_max)
        records.append(SeriesRecord(kind=kind, g=g, spec=spec.preset.value, start=0,
                                    coeffs=[v.render() for v in values]))
    rows = service.hbar_table(kind, spec, n_max, max(cfg.g_values))
    records.extend(row for row in rows if row.n in cfg.n_values)
    return CommandOutput(records)


def cmd_verify(cfg: JobConfig) -> CommandOutput:
    """Run verification checks; exit code 1 if any fails"""
    service = VerificationService(_moments(cfg), _enumeration(cfg))
    scale = max(cfg.n_values) if cfg.n_values else None
    report = service.run(cfg.checks or None, scale)
    return CommandOutput([report], exit_code=0 if report.passed else 1)


COMMANDS: Dict[str, Callable[[JobConfig], CommandOutput]] = {
    "table": cmd_table,
    "moments": cmd_moments,
    "cylinder": cmd_cylinder,
    "series": cmd_series,
    "verify": cmd_verify,
}


def run_command(cfg: JobConfig) -> CommandOutput:
    logger.info("command started", command=cfg.command)
    output = COMMANDS[cfg.command](cfg)
    logger.info("command finished", command=cfg.command, records=len(output.records), exit_code=output.exit_code)
    return output


# Rendering

def _poly_rows(base: Dict[str, Any], text: str) -> List[Dict[str, Any]]:
    poly = KappaPolynomial.parse(text)
    if not poly:
        return [dict(base, monomial="1", coefficient="0")]
    return [dict(base, monomial=m.render() or "1", coefficient=str(c)) for m, c in poly.sorted_terms()]


def flatten_record(record: BaseModel) -> List[Dict[str, Any]]:
    """CSV rows for one record; polynomials become (monomial, coefficient) rows"""
    if isinstance(record, GenusTableDocument):
        return [
            {"record": "genus_table", "kind": record.kind, "n": record.n, "g": e.g,
             "type": " ".join(str(p) for p in e.type), "count": e.count}
            for e in record.entries
        ]
    if isinstance(record, MomentRecord):
        base = {"record": "moment", "kind": record.kind, "g": record.g, "n": record.n}
        if record.spec is not None:
            return [dict(base, spec=record.spec, value=record.poly)]
        return _poly_rows(base, record.poly)
    if isinstance(record, CylinderRecord):
        return _poly_rows({"record": "cylinder", "kind": record.kind, "i": record.i, "j": record.j}, record.poly)
    if isinstance(record, SeriesRecord):
        return [
            {"record": "series", "kind": record.kind, "g": record.g, "spec": record.spec,
             "n": record.start + k, "value": v}
            for k, v in enumerate(record.coeffs)
        ]
    if isinstance(record, HbarRow):
        rows = [
            {"record": "hbar", "kind": record.kind, "spec": record.spec, "n": record.n, "g": str(g), "value": v}
            for g, v in enumerate(record.by_genus)
        ]
        rows.append({"record": "hbar", "kind": record.kind, "spec": record.spec, "n": record.n,
                     "g": "total", "value": record.total})
        return rows
    if isinstance(record, VerificationReport):
        return [
            {"record": "check", "name": c.name, "passed": c.passed, "cases": c.cases,
             "failures": "; ".join(c.failures)}
            for c in record.checks
        ]
    raise InvalidInputError(f"No CSV layout for {type(record).__name__}", field="record")


def _text_lines(record: BaseModel) -> List[str]:
    if isinstance(record, GenusTableDocument):
        lines = [f"# {record.kind} n={record.n}"]
        lines += [f"g={e.g} [{','.join(str(p) for p in e.type)}] {e.count}" for e in record.entries]
        return lines
    if isinstance(record, MomentRecord):
        symbol = "alpha" if record.kind == "permutation" else "m"
        suffix = f" [{record.spec}]" if record.spec else ""
        return [f"{symbol}_{record.n}^({record.g}) = {record.poly}{suffix}"]
    if isinstance(record, CylinderRecord):
        return [f"{record.kind} m_({record.i},{record.j}) = {record.poly}"]
    if isinstance(record, SeriesRecord):
        return [f"{record.kind} g={record.g} [{record.spec}]: {', '.join(record.coeffs)}"]
    if isinstance(record, HbarRow):
        return [f"n={record.n}: {' | '.join(record.by_genus)} => {record.total}"]
    if isinstance(record, VerificationReport):
        lines = []
        for c in record.checks:
            lines.append(f"{'PASS' if c.passed else 'FAIL'} {c.name} ({c.cases} cases)")
            lines += [f"    {failure}" for failure in c.failures]
        lines.append("all checks passed" if record.passed else "verification failed")
        return lines
    raise InvalidInputError(f"No text layout for {type(record).__name__}", field="record")


def render_output(output: CommandOutput, fmt: Optional[str] = None) -> str:
    """
    Serialize records as json, csv or text

    Args:
        output: Command output
        fmt: Output format (defaults to json)

    Returns:
        str: Deterministic serialization
    """
    fmt = fmt or "json"
    if fmt == "json":
        payload = [r.model_dump(mode="json") for r in output.records]
        if len(payload) == 1 and isinstance(output.records[0], VerificationReport):
            payload = payload[0]
        return json.dumps(payload, indent=2)
    if fmt == "csv":
        rows = [row for record in output.records for row in flatten_record(record)]
        buffer = io.StringIO()
        pd.DataFrame(rows).to_csv(buffer, index=False)
        return buffer.getvalue().rstrip("\n")
    if fmt == "text":
        return "\n".join(line for record in output.records for line in _text_lines(record))
    raise InvalidInputError(f"Unknown output format '{fmt}'", field="format")


def app_banner() -> str:
    return f"{settings.app_name} v{settings.app_version}"
