"""
rfs-bound - точка входа командной строки.

Запуск:
    rfs-bound compare --scenario linear --pd 0.8 --r 1 --b 1
    python -m rfs_bound mc --scenario linear --runs 1000 --seed 7
"""

import argparse
import sys
from typing import Optional

from rfs_bound.core.config import settings
from rfs_bound.core.constants import EXIT_OK
from rfs_bound.core.exceptions import report_exception
from rfs_bound.core.logger import get_logger, setup_logging
from rfs_bound.core.trace import generate_run_id, get_run_id, set_run_id
from rfs_bound.modules.cli import (
    ConfigEntry,
    Mode,
    build_run_config,
    describe_keys,
    read_config_file,
    run,
    run_figure,
)

logger = get_logger(__name__)

# флаг CLI -> ключ конфигурации
_FLAG_KEYS = {
    "scenario": "scenario",
    "pd": "pd",
    "r": "r",
    "b": "b",
    "scans": "scans",
    "e_scale": "e_scale",
    "prune_eps": "prune_eps",
    "seed": "seed",
    "runs": "runs",
    "out": "out",
    "particles": "particles",
    "threshold": "threshold",
    "format": "format",
}


def _common_arguments() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file; flags override it")
    common.add_argument("--scenario", choices=["linear", "bearings"])
    common.add_argument("--pd", help="probability of detection (0, 1)")
    common.add_argument("--r", help="maintenance probability [0, 1]")
    common.add_argument("--b", help="existence probability at scan 1 [0, 1]")
    common.add_argument("--scans", help="number of scans")
    common.add_argument("--e-scale", dest="e_scale", help="multiplier of e0 = e1")
    common.add_argument("--prune-eps", dest="prune_eps", help="sequence pruning threshold [0, 1e-3]")
    common.add_argument("--seed", help="Monte Carlo seed")
    common.add_argument("--runs", help="Monte Carlo runs")
    common.add_argument("--particles", help="particles per filter")
    common.add_argument("--threshold", help="existence threshold of the estimate")
    common.add_argument("--out", help="output file (.csv or .xlsx)")
    common.add_argument("--format", choices=["csv", "xlsx"])
    common.add_argument("--figure", type=int, choices=[1, 2, 3, 5, 6], help="run the parameter grid of a figure")
    common.add_argument("--log-level", dest="log_level", default=None)
    return common


def _parse_args(argv: Optional[list[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="rfs-bound",
        description="Recursive error bound for a Bernoulli RFS target with P_d < 1.",
        epilog="config file keys:\n" + describe_keys(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="mode", required=True)
    common = _common_arguments()
    subparsers.add_parser("rfs", parents=[common], help="RFS bound series")
    subparsers.add_parser("enum", parents=[common], help="ENUM PCRLB series")
    subparsers.add_parser("compare", parents=[common], help="RFS bound and ENUM PCRLB side by side")
    subparsers.add_parser("mc", parents=[common], help="Monte Carlo MSE of a Bernoulli particle filter vs the bound")
    return parser.parse_args(argv)


def _flag_entries(args: argparse.Namespace) -> dict[str, ConfigEntry]:
    entries = {}
    for flag, key in _FLAG_KEYS.items():
        value = getattr(args, flag, None)
        if value is not None:
            entries[key] = ConfigEntry(str(value), None)
    return entries


def main(argv: Optional[list[str]] = None) -> int:
    """
    Returns:
        код возврата: 0 при успехе, иначе код исключения
    """
    args = _parse_args(argv)
    setup_logging(args.log_level)
    set_run_id(generate_run_id())
    logger.info(f"Starting {settings.app_name} v{settings.app_version}, run {get_run_id()}")

    try:
        entries = read_config_file(args.config) if args.config else {}
        entries.update(_flag_entries(args))
        config = build_run_config(entries, Mode(args.mode))

        if args.figure is not None:
            outcomes = run_figure(args.figure, config)
            for outcome in outcomes:
                print(outcome.table_path)
        else:
            print(run(config).table_path)
    except Exception as e:
        line, exit_code = report_exception(e)
        print(line, file=sys.stderr)
        return exit_code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
