import argparse
import logging
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from catomo.errors import CatomoError, ConfigurationError, DegenerateProjection
from catomo.models.run_config import RunConfig
from catomo.settings import NumericsSettings, load_settings
from core.commands import run_conditional, run_entropy, run_qcurve, run_tomogram, run_validate


logger = logging.getLogger("tomo")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3

SUBCOMMANDS = {
    "tomogram": "single-mode tomogram grid of mode c (or of |beta>)",
    "conditional": "mode-c tomogram conditioned on a mode-d outcome, with strand verdict",
    "qcurve": "Mandel Q of the conditional state against phi = |delta - theta2|",
    "entropy": "entanglement entropy of the beam-splitter output in bits",
    "validate": "oracle equivalence, normalization and exponent checks",
}


def run_command(config: RunConfig, settings: NumericsSettings) -> int:
    """Handle command execution."""
    if config.subcommand == "tomogram":
        run_tomogram(config, settings)
    elif config.subcommand == "conditional":
        run_conditional(config, settings)
    elif config.subcommand == "qcurve":
        run_qcurve(config, settings)
    elif config.subcommand == "entropy":
        run_entropy(config, settings)
    elif config.subcommand == "validate":
        return EXIT_OK if run_validate(config, settings) else EXIT_FAILURE
    return EXIT_OK


def exit_code_for(error: Exception) -> int:
    """Translate an exception into the CLI exit code, logging it once."""
    if isinstance(error, ValidationError):
        for detail in error.errors():
            location = ".".join(str(part) for part in detail["loc"]) or "arguments"
            logger.error(f"❌ Invalid {location}: {detail['msg']}")
        return EXIT_USAGE
    if isinstance(error, ConfigurationError):
        logger.error(f"❌ {error}")
        return EXIT_USAGE
    if isinstance(error, DegenerateProjection):
        logger.error(f"⚠️ Degenerate conditioning: {error}")
        return EXIT_DEGENERATE
    if isinstance(error, CatomoError):
        logger.error(f"❌ {type(error).__name__}: {error}")
        return EXIT_FAILURE
    logger.exception(f"❗ Unexpected error: {error}")
    return EXIT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alpha-sq", dest="alpha_sq", type=float, help="|alpha|^2 of the input cat state")
    common.add_argument("--delta", type=float, help="phase of alpha (radians)")
    common.add_argument("--h", type=int, choices=(0, 1), help="0 for the even cat, 1 for the odd cat")
    common.add_argument("--x2", type=float, help="mode-d quadrature outcome X2")
    common.add_argument("--theta2", type=float, help="mode-d local-oscillator phase (radians)")
    common.add_argument("--state", choices=("cat", "coherent"), help="cat output or the coherent baseline")
    common.add_argument("--theta1-steps", dest="theta1_steps", type=int)
    common.add_argument("--x1-min", dest="x1_min", type=float)
    common.add_argument("--x1-max", dest="x1_max", type=float)
    common.add_argument("--x1-steps", dest="x1_steps", type=int)
    common.add_argument("--phi-steps", dest="phi_steps", type=int, help="samples of phi in [0, 2 pi]")
    common.add_argument("--dim", type=int, help="Fock cutoff per mode for the oracle")
    common.add_argument("--out", dest="out_path", help="output file")
    common.add_argument("--format", choices=("csv", "pgm"), help="grid file format")
    common.add_argument("--workers", type=int, help="threads for column evaluation")
    common.add_argument("--config", help="JSON settings file (default .TomoConfig)")
    common.add_argument("--verbose", action="store_true", help="debug logging")

    parser = argparse.ArgumentParser(
        prog="catomo", description="Optical tomograms of entangled coherent states"
    )
    commands = parser.add_subparsers(dest="subcommand", required=True)
    for name, description in SUBCOMMANDS.items():
        commands.add_parser(name, parents=[common], help=description, description=description)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main function to handle command-line arguments."""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        settings = load_settings(args.config)
        config = RunConfig.from_args(args, settings)
    except (ValidationError, ConfigurationError) as e:
        code = exit_code_for(e)
        parser.print_usage(sys.stderr)
        return code

    try:
        return run_command(config, settings)
    except Exception as e:
        return exit_code_for(e)


if __name__ == "__main__":
    sys.exit(main())
