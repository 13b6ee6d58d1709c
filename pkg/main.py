"""
Command-line entry point for the genus counting toolkit
"""
import argparse
import sys
from typing import List, Optional

import structlog
from pydantic import ValidationError

from cli.commands import app_banner, parse_kappa_values, parse_range, render_output, run_command
from config import settings
from core.exceptions import GenusCountingError
from core.log_config import configure_logging
from models.kappa_spec import Preset
from models.schemas import JobConfig
from services.verification_service import CHECK_NAMES

logger = structlog.get_logger(__name__)


def _global_options() -> argparse.ArgumentParser:
    """Options accepted both before and after the subcommand"""
    parent = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    parent.add_argument("--format", choices=["json", "csv", "text"], help="Output format (default json)")
    parent.add_argument("--cache-dir", help="Cache directory (default from GENUS_CACHE_DIR)")
    parent.add_argument("--cutoff", type=int, help="Cumulant cutoff K")
    parent.add_argument("--oracle-limit", type=int, help="Largest n for enumeration")
    parent.add_argument("--jobs", type=int, help="Worker processes for enumeration")
    parent.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], help="Log level")
    parent.add_argument("--margin", type=int, help="Extra series truncation")
    return parent


def build_parser() -> argparse.ArgumentParser:
    common = _global_options()
    parser = argparse.ArgumentParser(prog="genus", description=app_banner(), parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)
    presets = [p.value for p in Preset]

    table = sub.add_parser("table", parents=[common], help="Genus tables by enumeration")
    table.add_argument("--kind", choices=["permutation", "partition"], default="permutation")
    table.add_argument("--n", type=parse_range, required=True)

    moments = sub.add_parser("moments", parents=[common], help="Moment polynomials")
    moments.add_argument("--kind", choices=["permutation", "partition"], default="permutation")
    moments.add_argument("--g", type=parse_range, required=True)
    moments.add_argument("--n", type=parse_range, required=True)
    moments.add_argument("--preset", choices=presets)
    moments.add_argument("--kappa", type=parse_kappa_values, help="Values for preset custom, e.g. 1=0,2=1")

    cylinder = sub.add_parser("cylinder", parents=[common], help="Planar cylinder moments")
    cylinder.add_argument("--kind", choices=["perm", "part"], default="part")
    cylinder.add_argument("--i", type=parse_range, required=True)
    cylinder.add_argument("--j", type=parse_range, required=True)
    cylinder.add_argument("--set-second-order-zero", action="store_true")

    series = sub.add_parser("series", parents=[common], help="Specialized series and genus sums")
    series.add_argument("--kind", choices=["permutation", "partition"], default="permutation")
    series.add_argument("--preset", choices=presets, required=True)
    series.add_argument("--kappa", type=parse_kappa_values)
    series.add_argument("--g", type=parse_range, required=True)
    series.add_argument("--n", type=parse_range, required=True)

    verify = sub.add_parser("verify", parents=[common], help="Run verification checks")
    verify.add_argument("--checks", type=lambda s: [c.strip() for c in s.split(",") if c.strip()],
                        help=f"Comma-separated subset of: {', '.join(CHECK_NAMES)}")
    verify.add_argument("--n", type=parse_range, help="Scale for the selected checks")
    return parser


def build_job_config(args: argparse.Namespace) -> JobConfig:
    """Merge parsed arguments with settings into a validated JobConfig"""
    return JobConfig(
        command=args.command,
        kind=getattr(args, "kind", None),
        n_values=getattr(args, "n", None) or [],
        g_values=getattr(args, "g", None) or [],
        i_values=getattr(args, "i", None) or [],
        j_values=getattr(args, "j", None) or [],
        preset=getattr(args, "preset", None),
        kappa_values=getattr(args, "kappa", None) or {},
        cutoff=getattr(args, "cutoff", None),
        margin=getattr(args, "margin", None),
        oracle_limit=getattr(args, "oracle_limit", None),
        output_format=getattr(args, "format", "json"),
        cache_dir=getattr(args, "cache_dir", None),
        jobs=getattr(args, "jobs", settings.jobs),
        checks=getattr(args, "checks", None) or [],
        second_order_zero=getattr(args, "set_second_order_zero", False),
    )


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one CLI command

    Returns:
        int: 0 on success, 1 on a domain error or failed verification, 2 on bad arguments
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(getattr(args, "log_level", settings.log_level), settings.log_format)

    try:
        cfg = build_job_config(args)
    except ValidationError as e:
        first = e.errors()[0]
        print(f"error: {first['msg']}", file=sys.stderr)
        return 2

    try:
        output = run_command(cfg)
        print(render_output(output, cfg.output_format))
        return output.exit_code
    except GenusCountingError as e:
        logger.error("command failed", command=cfg.command, error=e.message, details=e.details)
        print(f"error: {e.message}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
