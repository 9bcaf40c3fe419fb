"""
Main entry point for the xjx-spectra command-line tool.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from dotenv import load_dotenv

# Add project root to Python path
project_root = Path(__file__).parent.parent
if str(project_root) not in sys.path:
    sys.path.append(str(project_root))

from src import __version__
from src.cli import COMMAND_HANDLERS, make_writer
from src.utils.errors import AcceptanceFailure, NumericalFailure, XjxError
from src.utils.settings import Settings

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_ACCEPTANCE = 3

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with status 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="Master seed")
    common.add_argument("--jobs", type=int, help="Worker threads for Monte-Carlo trials")
    common.add_argument("--law", help="Entry law of X")
    common.add_argument("--out", dest="output_dir", help="Output directory (default $XJX_OUTPUT_DIR or ./output)")
    common.add_argument("--config", type=Path, help="JSON config file")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="Debug logging")
    verbosity.add_argument("--quiet", action="store_true", help="Warnings and errors only")

    parser = _Parser(prog="xjx-spectra", description="Spectral laws and whiteness tests for X J X*")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def shape_args(p: argparse.ArgumentParser, gamma: bool = True) -> None:
        p.add_argument("--shape", nargs=2, type=int, metavar=("N", "n"), help="Dimensions of X")
        if gamma:
            p.add_argument("--gamma", type=float, help="N / n; keeps n from --shape")

    p = sub.add_parser("scatter", parents=[common], help="Eigenvalues of X J X* and support radii")
    shape_args(p)
    p.add_argument("--save-matrix", dest="save_matrix", action="store_true", default=None, help="Also write X")

    p = sub.add_parser("cdf", parents=[common], help="Radial distribution function, theory vs realization")
    shape_args(p)
    p.add_argument("--grid-points", dest="grid_points", type=int, help="Radius grid size")

    p = sub.add_parser("test", parents=[common], help="Calibrated whiteness test on a matrix file")
    p.add_argument("input", help="CSV file with the N x n observation matrix (re,im pairs)")
    shape_args(p, gamma=False)
    p.add_argument("--test", choices=["t1", "t2", "t3"], help="Test statistic")
    p.add_argument("--level", type=float, help="Test level")
    p.add_argument("--reps", dest="calibration_reps", type=int, help="Calibration replications")
    p.add_argument("--reference-seed", dest="reference_seed", type=int, help="Seed of the frozen reference samples")

    p = sub.add_parser("roc", parents=[common], help="ROC curves against an MA(1) alternative")
    shape_args(p, gamma=False)
    p.add_argument("--trials", type=int, help="Trials per side")
    p.add_argument("--alt", help="identity:ALPHA2 or toeplitz:TRACE")
    p.add_argument("--tests", nargs="+", choices=["t1", "t2", "t3"], help="Tests to sweep")
    p.add_argument("--reference-seed", dest="reference_seed", type=int, help="Seed of the frozen reference samples")

    p = sub.add_parser("master", parents=[common], help="Master-equation solutions on a (z, t) grid")
    p.add_argument("--gamma", type=float, help="Dimension ratio")
    p.add_argument("--z", nargs="+", help="Complex points, e.g. 1+0.5j")
    p.add_argument("--t", nargs="+", type=float, help="Imaginary parts of eta")
    p.add_argument("--tol", type=float, help="Residual tolerance")

    p = sub.add_parser("smin", parents=[common], help="Smallest singular value of X J X* - z")
    shape_args(p, gamma=False)
    p.add_argument("--z", help="Shift")
    p.add_argument("--trials", type=int, help="Independent draws")
    p.add_argument("--smooth", action="store_true", default=None, help="Gaussian smoothing of X")

    p = sub.add_parser("verify", parents=[common], help="Run the acceptance suite")
    p.add_argument("--criteria", nargs="+", type=int, help="Subset of criterion ids")
    p.add_argument("--tolerance-scale", dest="tolerance_scale", type=float, help="Multiply every tolerance")
    p.add_argument("--fast", action="store_true", default=None, help="Reduced trial counts")
    return parser


_NON_SETTINGS = ("command", "config", "verbose", "quiet")


def resolve_settings(args: argparse.Namespace) -> Settings:
    """CLI flags > config file > environment > defaults."""
    settings = Settings(args.command, config_file=args.config)
    overrides: Dict[str, Any] = {k: v for k, v in vars(args).items() if k not in _NON_SETTINGS}
    if overrides.get("shape") is not None:
        overrides["shape"] = list(overrides["shape"])
    settings.update(overrides)
    settings.validate()
    return settings


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one command and return its exit status."""
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=[logging.StreamHandler(sys.stdout)], force=True)

    try:
        # Load environment variables
        load_dotenv()
        settings = resolve_settings(args)
        writer = make_writer(settings)
        COMMAND_HANDLERS[settings.command](settings, writer)
        logging.info(f"'{settings.command}' finished; wrote {len(writer.written)} file(s) to {writer.output_dir}")
        return EXIT_OK
    except AcceptanceFailure as e:
        logging.error(str(e))
        return EXIT_ACCEPTANCE
    except NumericalFailure as e:
        logging.error(f"Numerical failure: {e} {e.diagnostics}")
        return EXIT_NUMERICAL
    except (XjxError, OSError) as e:
        logging.error(f"{type(e).__name__}: {e}")
        return EXIT_USAGE


def main_entry() -> None:
    """Console-script wrapper."""
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
