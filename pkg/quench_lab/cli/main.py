"""quench-lab command line entry point."""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from quench_lab import __version__
from quench_lab.config import setup_logging
from quench_lab.core.handlers import handle_error, report_json
from quench_lab.services.artifacts import make_run_dir
from quench_lab.services.catalog import CATALOG
from quench_lab.services.config_loader import load_config_file, resolve_config
from quench_lab.services.experiments import run_experiment


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quench-lab",
        description="Log-divergent distributions after quantum quenches.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="Override QUENCH_LAB_LOG_LEVEL",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Run one experiment and write artifacts")
    run.add_argument("experiment", choices=sorted(CATALOG))
    run.add_argument("--config", type=Path, help="TOML or JSON config file")
    run.add_argument("--seed", type=int)
    run.add_argument("--out-dir", type=Path)
    run.add_argument("--trajectories", type=int)
    run.add_argument("--dt", type=float)
    run.add_argument("--t-end", type=float)
    run.add_argument("--threads", type=int)
    run.add_argument(
        "--gnuplot", action="store_true", default=None, help="Also write plot scripts"
    )

    validate = commands.add_parser(
        "validate", help="Print the fully resolved configuration"
    )
    validate.add_argument("experiment", nargs="?", choices=sorted(CATALOG))
    validate.add_argument("--config", type=Path, help="TOML or JSON config file")

    commands.add_parser("list", help="Print the experiment catalog")
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    names = ("seed", "out_dir", "trajectories", "dt", "t_end", "threads", "gnuplot")
    return {name: getattr(args, name, None) for name in names}


def _file_values(args: argparse.Namespace) -> Dict[str, Any]:
    return load_config_file(args.config) if args.config else {}


def _command_run(args: argparse.Namespace) -> int:
    config = resolve_config(args.experiment, _file_values(args), _overrides(args))
    if config.out_dir is None:
        config = config.model_copy(
            update={"out_dir": make_run_dir(config.experiment, config.seed)}
        )
    # error.json lands here if the run fails
    args.out_dir = config.out_dir
    result = run_experiment(config)
    print(str(result.out_dir))
    return 0


def _command_validate(args: argparse.Namespace) -> int:
    config = resolve_config(args.experiment, _file_values(args))
    resolved = config.model_dump(mode="json", exclude_none=True)
    print(json.dumps(resolved, indent=2, sort_keys=True))
    return 0


def _command_list(args: argparse.Namespace) -> int:
    width = max(len(name) for name in CATALOG)
    for entry in CATALOG.values():
        print(f"{entry.name:<{width}}  {entry.provenance:<22}  {entry.description}")
    return 0


COMMANDS = {
    "run": _command_run,
    "validate": _command_validate,
    "list": _command_list,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, dispatch the command and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        return int(exit_request.code or 0)

    setup_logging(args.log_level)
    experiment = getattr(args, "experiment", None)
    try:
        return COMMANDS[args.command](args)
    except Exception as exc:
        out_dir = getattr(args, "out_dir", None)
        report, exit_code = handle_error(exc, experiment, out_dir)
        print(report_json(report), file=sys.stderr)
        return exit_code


if __name__ == "__main__":
    sys.exit(main())
