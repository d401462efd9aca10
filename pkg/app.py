"""
Command-line front end.

    python app.py evolve  --flow boost --xi 0,0,0 --e 0,0,1 --g 1 --t 1
    python app.py certify --flow weinberg --samples 1000 --seed 7 --tol 1e-3
    python app.py gisin   --flow boost --weighting paper-lambda
    python app.py compare --xi-a=0.6,0,0.6 --xi-b=-0.6,0,0.6 --lam 0.5

Exit codes: 0 success, 2 usage error, 3 certification failure.
"""

import argparse
import logging
import sys
from typing import List, Optional

from data.config_loader import COMMANDS, RunConfig, build_run_config, load_config_file, merge_sources
from utils.formatting import format_number
from utils.validators import ConfigError, InvalidStateError, QLinFlowError
from views import EXIT_USAGE, ViewResult

logger = logging.getLogger("app")


# ===============================
# ARGUMENT PARSER
# ===============================
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qlinflow",
        description="Nonlinear qubit flows, quasi-linearity certification and the two-wing signaling test",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="flat key=value file; flags override it")

    # Every value is kept as text and parsed in one place, so flags and
    # config-file entries go through identical validation.
    text_flags = {
        "--flow": "boost | weinberg",
        "--xi": "initial Bloch vector, e.g. 0,0,0.5",
        "--xi-a": "first ensemble member (compare)",
        "--xi-b": "second ensemble member (compare)",
        "--lam": "weight of the first member (compare)",
        "--e": "flow direction (normalized)",
        "--g": "rate g > 0",
        "--t": "comma-separated times",
        "--phi": "comma-separated angles (radians unless --degrees)",
        "--samples": "certifier sample count",
        "--seed": "random seed",
        "--tol": "certifier tolerance",
        "--weighting": "paper-lambda | frequency",
        "--steps": "RK4 steps",
        "--format": "csv | json",
        "--output": "output path (stdout when absent)",
        "--ledger": "DuckDB file recording each run",
    }
    for flag, help_text in text_flags.items():
        parser.add_argument(flag, default=None, help=help_text)

    for flag, help_text in {
        "--rk4": "add RK4 columns to evolve",
        "--degrees": "read --phi in degrees",
        "--verbose": "debug logging on stderr",
    }.items():
        parser.add_argument(flag, action="store_const", const="true", default=None, help=help_text)

    return parser


def parse_run_config(argv: List[str]) -> RunConfig:
    """argv -> RunConfig with flags > config file > defaults"""
    args = build_parser().parse_args(argv)
    flags = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    file_values = load_config_file(args.config) if args.config else None
    return build_run_config(args.command, merge_sources(flags, file_values))


# ===============================
# COMMANDS
# ===============================
def cmd_evolve(cfg: RunConfig) -> ViewResult:
    from views.evolve_view import render_evolve
    return render_evolve(cfg)


def cmd_certify(cfg: RunConfig) -> ViewResult:
    from views.certify_view import render_certify
    return render_certify(cfg)


def cmd_gisin(cfg: RunConfig) -> ViewResult:
    from views.gisin_view import render_gisin
    return render_gisin(cfg)


def cmd_compare(cfg: RunConfig) -> ViewResult:
    from views.compare_view import render_compare
    return render_compare(cfg)


COMMAND_ROUTES = {
    "evolve": cmd_evolve,
    "certify": cmd_certify,
    "gisin": cmd_gisin,
    "compare": cmd_compare,
}


# ===============================
# OUTPUT
# ===============================
def configure_logging(verbose: bool):
    logging.basicConfig(
        format="[%(asctime)s] [%(levelname)s] %(message)s",
        datefmt="%H:%M:%S",
        stream=sys.stderr,
    )
    logging.getLogger().setLevel(logging.DEBUG if verbose else logging.INFO)


def write_output(cfg: RunConfig, result: ViewResult):
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as handle:
            handle.write(result.body)
    else:
        sys.stdout.write(result.body)

    if result.summary_name is not None and cfg.format == "csv":
        print(f"{result.summary_name}={format_number(result.summary_value)}", file=sys.stderr)


def record_run(cfg: RunConfig, result: Optional[ViewResult], error: Optional[str] = None):
    if not cfg.ledger:
        return
    from db.db_manager import config_digest, log_run

    if result is None:
        log_run(cfg.ledger, cfg.command, config_digest(cfg), 0, "FAILED", None, error)
        return
    status = "SUCCESS" if result.exit_code == 0 else "VIOLATIONS"
    log_run(cfg.ledger, cfg.command, config_digest(cfg), result.rows, status, result.summary_value)


# ===============================
# ENTRY POINT
# ===============================
def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)

    try:
        cfg = parse_run_config(argv)
    except SystemExit as exc:
        # argparse reports usage errors with exit status 2
        return int(exc.code or 0)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    configure_logging(cfg.verbose)

    try:
        result = COMMAND_ROUTES[cfg.command](cfg)
    except (ConfigError, InvalidStateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        record_run(cfg, None, str(exc))
        return EXIT_USAGE
    except QLinFlowError as exc:
        logger.error("%s failed: %s", cfg.command, exc)
        record_run(cfg, None, str(exc))
        return 1

    write_output(cfg, result)
    record_run(cfg, result)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
