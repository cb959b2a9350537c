"""Entry point for the ``acerl`` command line (also ``python -m acerl``)."""

import argparse
import logging
import logging.config
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Sequence

from .config import KMeansConfig, resolve_settings, setup_logging
from .errors import AcerlError, NumericalError
from .harness.commands import (
    cmd_experiment,
    cmd_fit,
    cmd_simulate,
    cmd_tasks,
    cmd_tune,
    dump_report,
)
from .utils import expanded_path

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NUMERICAL = 2

_QUIET_LIBS = ("numpy", "scipy", "sklearn", "filelock", "matplotlib")


@dataclass
class CLIConfig:
    """Parsed command line: logging options plus the chosen sub-command's arguments."""
    command: str
    logging_config: Optional[Path] = None
    log_file: Optional[Path] = None
    verbose: int = 0
    config_path: Optional[Path] = None
    options: dict[str, Any] = field(default_factory=dict)


def _estimator_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("estimator")
    group.add_argument("--r", type=int, default=None, help="Latent dimension")
    group.add_argument("--s", type=int, default=None, help="Working sparsity level")
    group.add_argument("--eta", type=float, default=None, help="Step size")
    group.add_argument("--inner", type=int, default=None, help="Inner iterations T")
    group.add_argument("--outer", type=int, default=None, help="Outer iterations K")
    group.add_argument("--seed", type=int, default=None, help="Random seed")
    group.add_argument("--init", choices=("auto", "fantope", "gram_pca"), default=None,
                       help="Initializer")
    group.add_argument("--method", choices=("acerl", "spca"), default="acerl")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-c", "--config",
        dest="config_path",
        type=Path,
        default=None,
        help="Configuration file (YAML/JSON); overrides flags"
    )
    common.add_argument(
        "--logging-config",
        type=Path,
        default=None,
        help="Path to logging configuration file (.ini)"
    )
    common.add_argument(
        "--log-file",
        type=Path,
        default=None,
        help="Also append package log records to this file"
    )
    common.add_argument(
        "-v", "--verbose",
        action="count",
        default=0,
        help="Verbosity level: -v (DEBUG), -vv (DEBUG + file:line), -vvv (DEBUG + libs)"
    )

    parser = argparse.ArgumentParser(
        prog="acerl",
        description="Adaptive contrastive edge representation learning",
        formatter_class=argparse.RawDescriptionHelpFormatter
    )
    sub = parser.add_subparsers(dest="command", required=True)

    simulate = sub.add_parser("simulate", parents=[common], help="Generate a synthetic dataset")
    simulate.add_argument("spec", type=Path, help="Simulation spec (JSON/YAML)")
    simulate.add_argument("-o", "--output", type=Path, default=Path("."))

    fit = sub.add_parser("fit", parents=[common], help="Fit an edge embedding")
    fit.add_argument("dataset", type=Path)
    fit.add_argument("-o", "--output", type=Path, default=Path("model"))
    _estimator_flags(fit)

    tasks = sub.add_parser("tasks", parents=[common], help="Run downstream tasks with a fitted model")
    tasks.add_argument("model", type=Path)
    tasks.add_argument("dataset", type=Path)
    tasks.add_argument("--task", dest="tasks", action="append",
                       choices=("classify", "select", "community", "regress", "hubs"),
                       help="Task to run; repeatable (default: classify)")
    tasks.add_argument("--truth", type=Path, default=None, help="Ground-truth sidecar from `simulate`")
    tasks.add_argument("--s", type=int, default=None, help="Number of edges to select")
    tasks.add_argument("--G", type=int, default=2, help="Number of communities")
    tasks.add_argument("--top", type=int, default=5, help="Number of hub nodes to report")
    tasks.add_argument("--frac", type=float, default=0.6, help="Training fraction")
    tasks.add_argument("--seed", type=int, default=0, help="Split seed")
    tasks.add_argument("--embedding", choices=("precision_weighted", "least_squares"),
                       default="precision_weighted", help="Subject coordinates of an ACERL model")

    experiment = sub.add_parser("experiment", parents=[common], help="Run a replication plan")
    experiment.add_argument("plan", type=Path)
    experiment.add_argument("--workers", type=int, default=None)
    experiment.add_argument("-o", "--output", type=Path, default=None)

    tune = sub.add_parser("tune", parents=[common], help="Profiles for choosing r and s")
    tune.add_argument("dataset", type=Path)
    tune.add_argument("--r-max", type=int, required=True)
    tune.add_argument("--model", type=Path, default=None)
    tune.add_argument("-o", "--output", type=Path, default=Path("."))

    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> CLIConfig:
    """Parse command-line arguments using argparse."""
    args = vars(build_parser().parse_args(argv))

    logging_config = args.pop("logging_config")
    log_file = args.pop("log_file")
    config_path = args.pop("config_path")

    return CLIConfig(
        command=args.pop("command"),
        logging_config=expanded_path(logging_config) if logging_config else None,
        log_file=expanded_path(log_file) if log_file else None,
        verbose=args.pop("verbose"),
        config_path=expanded_path(config_path) if config_path else None,
        options=args
    )


def configure_logging(config: CLIConfig) -> None:
    """Configure logging based on CLI arguments.

    Priority:
    1. logging_config (.ini file) if provided
    2. verbose level (-v, -vv, -vvv)
    3. Default (INFO level, simple format)

    ``--log-file`` adds a file copy of the package records in every case.
    """
    level = logging.INFO if config.verbose == 0 else logging.DEBUG
    if config.log_file is not None:
        setup_logging("acerl", level, log_file=config.log_file)

    if config.logging_config and config.logging_config.exists():
        logging.config.fileConfig(config.logging_config, disable_existing_loggers=False)
        return

    format_str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    if config.verbose >= 2:
        format_str = "%(asctime)s - %(name)s - %(levelname)s - %(filename)s:%(lineno)d - %(message)s"

    logging.basicConfig(
        level=level,
        format=format_str,
        datefmt="%Y-%m-%d %H:%M:%S"
    )

    if config.verbose < 3:
        for lib in _QUIET_LIBS:
            logging.getLogger(lib).setLevel(logging.WARNING)


def run(cli_config: CLIConfig) -> None:
    opts = cli_config.options

    if cli_config.command == "simulate":
        for path in cmd_simulate(opts["spec"], opts["output"]):
            print(path)

    elif cli_config.command == "fit":
        flags = {"estimator": {
            "r": opts["r"], "s": opts["s"], "eta": opts["eta"], "inner_iters": opts["inner"],
            "outer_iters": opts["outer"], "seed": opts["seed"], "init": opts["init"],
        }}
        settings = resolve_settings(flags, cli_config.config_path)
        path, summary = cmd_fit(opts["dataset"], opts["output"], settings, opts["method"])
        for line in summary:
            print(line)
        print(path)

    elif cli_config.command == "tasks":
        settings = resolve_settings(None, cli_config.config_path)
        report = cmd_tasks(
            opts["model"], opts["dataset"], opts["tasks"] or ["classify"],
            truth_path=opts["truth"], s=opts["s"], G=opts["G"], top=opts["top"],
            frac=opts["frac"], seed=opts["seed"], kmeans=settings.get_config(KMeansConfig),
            embedding=opts["embedding"]
        )
        print(dump_report(report))

    elif cli_config.command == "experiment":
        for path in cmd_experiment(opts["plan"], opts["workers"], opts["output"]):
            print(path)

    elif cli_config.command == "tune":
        for path in cmd_tune(opts["dataset"], opts["r_max"], opts["output"], opts["model"]):
            print(path)


def main(argv: Optional[Sequence[str]] = None) -> int:
    cli_config = parse_args(argv)

    configure_logging(cli_config)

    try:
        run(cli_config)
    except NumericalError as exc:
        logger.error("Numerical failure: %s", exc)
        return EXIT_NUMERICAL
    except (AcerlError, OSError, ValueError, RuntimeError) as exc:
        logger.error("%s", exc)
        return EXIT_INPUT
    except KeyboardInterrupt:
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
