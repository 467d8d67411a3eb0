"""
Author:
    Inspyre Softworks

Project:
    SphericalTrop

File:
    spherical_trop/cli/main.py


Description:
    Main CLI logic and argument parsing for SphericalTrop.

"""
import argparse
import logging
import sys
from typing import Callable, Final, Sequence

from spherical_trop.cli.commands import (
    TROP_MODES,
    RunContext,
    run_check_star,
    run_compactify,
    run_examples,
    run_faces,
    run_limits,
    run_p_image,
    run_plot,
    run_retract,
    run_star,
    run_trop,
    run_validate,
)
from spherical_trop.cli.completions import SUPPORTED_SHELLS, emit_completion_script
from spherical_trop.cli.documents import CommandScriptDocument, load_document
from spherical_trop.cli.reports import FORMAT_TEXT, FORMATS, Report, emit
from spherical_trop.cli.version import print_debug_info, print_version_info
from spherical_trop.config import Settings
from spherical_trop.errors import (
    ConfigurationError,
    DocumentError,
    ParseError,
    SphericalTropError,
    UsageError,
)
from spherical_trop.tropicalize import Family

try:
    from rich.console import Console
    from rich.logging import RichHandler
    _RICH_AVAILABLE: bool = True
except ImportError:
    _RICH_AVAILABLE = False

log = logging.getLogger(__name__)

# Subcommand names - single source of truth for CLI commands
COMMAND_VALIDATE: Final[str] = 'validate'
COMMAND_FACES: Final[str] = 'faces'
COMMAND_STAR: Final[str] = 'star'
COMMAND_CHECK_STAR: Final[str] = 'check-star'
COMMAND_TROP: Final[str] = 'trop'
COMMAND_RETRACT: Final[str] = 'retract'
COMMAND_COMPACTIFY: Final[str] = 'compactify'
COMMAND_P_IMAGE: Final[str] = 'p-image'
COMMAND_LIMITS: Final[str] = 'limits'
COMMAND_EXAMPLES: Final[str] = 'examples'
COMMAND_PLOT: Final[str] = 'plot'
COMMAND_BATCH: Final[str] = 'batch'
COMMAND_DEBUG_INFO: Final[str] = 'debug-info'
COMMAND_COMPLETION: Final[str] = 'completion'

# Flag definitions - single source of truth for CLI flags
FLAG_VERSION_SHORT: Final[str] = '-V'
FLAG_VERSION_LONG: Final[str] = '--version'
FLAG_HELP_SHORT: Final[str] = '-h'
FLAG_HELP_LONG: Final[str] = '--help'

# Exit statuses
EXIT_OK: Final[int] = 0
EXIT_VALIDATION_FAILED: Final[int] = 1
EXIT_USAGE: Final[int] = 2
EXIT_ERROR: Final[int] = 3

Handler = Callable[[argparse.Namespace, RunContext], Report]

REPORT_COMMANDS: Final[dict[str, Handler]] = {
    COMMAND_VALIDATE: run_validate,
    COMMAND_FACES: run_faces,
    COMMAND_STAR: run_star,
    COMMAND_CHECK_STAR: run_check_star,
    COMMAND_TROP: run_trop,
    COMMAND_RETRACT: run_retract,
    COMMAND_COMPACTIFY: run_compactify,
    COMMAND_P_IMAGE: run_p_image,
    COMMAND_LIMITS: run_limits,
    COMMAND_EXAMPLES: run_examples,
    COMMAND_PLOT: run_plot,
}

KNOWN_COMMANDS: Final[frozenset[str]] = frozenset(
    set(REPORT_COMMANDS) | {COMMAND_BATCH, COMMAND_DEBUG_INFO, COMMAND_COMPLETION}
)
KNOWN_FLAGS: Final[frozenset[str]] = frozenset({FLAG_VERSION_SHORT, FLAG_VERSION_LONG, FLAG_HELP_SHORT, FLAG_HELP_LONG})

# Errors in what the user typed or supplied exit with EXIT_USAGE; everything else the
# library raises exits with EXIT_ERROR.
_USAGE_ERRORS: Final[tuple[type[Exception], ...]] = (DocumentError, UsageError, ParseError, ConfigurationError)


class VersionAction(argparse.Action):
    """Custom argparse action to print version info and exit."""

    def __call__(
        self,
        parser: argparse.ArgumentParser,
        namespace: argparse.Namespace,
        values: str | Sequence[str] | None,
        option_string: str | None = None,
    ) -> None:
        print_version_info()
        parser.exit()


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected an integer, got {text!r}') from None
    if value < 1:
        raise argparse.ArgumentTypeError(f'expected a positive integer, got {value}')
    return value


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=FORMATS, default=FORMAT_TEXT, help='Report format (default: text).')
    common.add_argument('--samples', type=_positive_int, help='Group samples per semi-invariant (default: SPHTROP_SAMPLES or 8).')
    common.add_argument('--seed', type=int, help='Sampling seed (default: SPHTROP_SEED or 0).')
    common.add_argument('--jobs', type=_positive_int, default=1, help='Worker threads for multi-item inputs.')
    common.add_argument('-v', '--verbose', action='count', default=0, help='More log output on stderr; repeatable.')
    return common


def _add_data(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--data', help="Registry entry (e.g. 'gl2', 'torus(2)'), spherical data document path, or '-' for stdin.")


def _add_fan(parser: argparse.ArgumentParser, optional: bool = False) -> None:
    parser.add_argument(
        'fan',
        nargs='?' if optional else None,
        help='Fan name in the spherical data, or path to a fan document.',
    )


def _add_cone(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--rays', default='', help="Rays separated by ';', e.g. '1,0; 1,1'. Empty for the zero cone.")
    parser.add_argument('--colors', help="Comma-separated color names, e.g. 'D1,D2'.")


def build_parser() -> argparse.ArgumentParser:
    """
    Build and return the argument parser for the SphericalTrop CLI.

    Returns:
        Configured ArgumentParser instance
    """
    parser = argparse.ArgumentParser(
        prog='spherical-trop',
        description='SphericalTrop - colored fans, tropicalization and compactifications of spherical embeddings.',
    )
    parser.add_argument(
        FLAG_VERSION_SHORT,
        FLAG_VERSION_LONG,
        action=VersionAction,
        nargs=0,
        help='Show version and environment info.',
    )
    common = _common_options()
    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    validate = subparsers.add_parser(COMMAND_VALIDATE, parents=[common], help='Validate spherical data and colored fans')
    _add_data(validate)
    _add_fan(validate, optional=True)

    faces = subparsers.add_parser(COMMAND_FACES, parents=[common], help='List the (colored) faces of a cone')
    _add_data(faces)
    _add_cone(faces)
    faces.add_argument('--all', action='store_true', help='List every face, not only the colored faces.')

    star = subparsers.add_parser(COMMAND_STAR, parents=[common], help='Star of a colored cone: the orbit closure fan')
    _add_data(star)
    _add_fan(star)
    star.add_argument('--tau-rays', default='', help='Rays of tau (empty for the zero cone).')
    star.add_argument('--tau-colors', help='Colors of tau.')
    star.add_argument('--dominant-colors', help='Colors mapping dominantly onto the orbit.')

    check_star = subparsers.add_parser(COMMAND_CHECK_STAR, parents=[common], help='Whether every cone lies in the valuation cone')
    _add_data(check_star)
    _add_fan(check_star)

    trop = subparsers.add_parser(COMMAND_TROP, parents=[common], help='Tropicalize points over Puiseux series')
    trop.add_argument('--mode', choices=TROP_MODES, help='Default: generic with --entry, otherwise torus.')
    trop.add_argument('--entry', help="Registry entry for generic tropicalization, e.g. 'sl2_h'.")
    _add_data(trop)
    trop.add_argument('--fan', help='Fan for extended tropicalization.')
    trop.add_argument('--chart', help='Rays of the chart cone for extended tropicalization.')
    trop.add_argument('--point', action='append', help="A point such as '(u^2, u^3)'; repeatable.")
    trop.add_argument('--points', help='Path to a points document.')
    trop.add_argument('--check-stability', action=argparse.BooleanOptionalAction, default=True,
                      help='Fail if doubling the samples changes a result.')

    retract = subparsers.add_parser(COMMAND_RETRACT, parents=[common], help='Evaluate a retraction seminorm family')
    retract.add_argument('--family', choices=[f.value for f in Family], default=Family.MONOMIAL.value)
    retract.add_argument('--mu', default='0', help="Non-negative rational or 'inf' (default: 0).")
    retract.add_argument('--f', required=True, help="Laurent polynomial in t1..tn, e.g. 't1 + t2^-1'.")
    retract.add_argument('--point', required=True, help="The point, e.g. '(u, u^2)'.")
    retract.add_argument('--curve', action='store_true', help='Also list the affine pieces of mu -> value.')

    compactify = subparsers.add_parser(COMMAND_COMPACTIFY, parents=[common], help='Canonical compactification of a cone')
    _add_data(compactify)
    _add_cone(compactify)

    p_image = subparsers.add_parser(COMMAND_P_IMAGE, parents=[common], help='Image of the retraction in trop(X)')
    _add_data(p_image)
    _add_fan(p_image)

    limits = subparsers.add_parser(COMMAND_LIMITS, parents=[common], help='Limit of a ray in a compactified cone')
    _add_data(limits)
    _add_cone(limits)
    limits.add_argument('--v0', required=True, help='Base point in the cone.')
    limits.add_argument('--w', required=True, help='Direction.')

    examples = subparsers.add_parser(COMMAND_EXAMPLES, parents=[common], help='List or dump built-in examples')
    examples.add_argument('name', nargs='?', help="Entry name, e.g. 'gl2'.")

    plot = subparsers.add_parser(COMMAND_PLOT, parents=[common], help='Draw a rank-2 colored fan as SVG')
    _add_data(plot)
    _add_fan(plot)
    plot.add_argument('--out', required=True, help='Output SVG path.')
    plot.add_argument('--no-image', action='store_true', help='Do not overlay the retraction image.')

    batch = subparsers.add_parser(COMMAND_BATCH, parents=[common], help='Run a command script document')
    batch.add_argument('script', help="Path to a command_script document, or '-'.")

    subparsers.add_parser(COMMAND_DEBUG_INFO, help='Display diagnostic and environment information')

    completion = subparsers.add_parser(COMMAND_COMPLETION, help='Generate shell completion script')
    completion.add_argument('shell', choices=sorted(SUPPORTED_SHELLS), help='Shell to generate completion for (bash, zsh, fish)')

    return parser


def subcommand_flags(parser: argparse.ArgumentParser) -> dict[str, tuple[str, ...]]:
    """Option strings of every subcommand, read from ``parser``."""
    flags: dict[str, tuple[str, ...]] = {}
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            for name, sub in action.choices.items():
                flags[name] = tuple(opt for a in sub._actions for opt in a.option_strings)
    return flags


def configure_logging(base_level: int, verbosity: int = 0) -> None:
    """Send ``spherical_trop`` log records to stderr; each ``-v`` lowers the threshold one level."""
    level = max(logging.DEBUG, base_level - 10 * verbosity)
    logger = logging.getLogger('spherical_trop')
    for existing in list(logger.handlers):
        if getattr(existing, '_spherical_trop', False):
            logger.removeHandler(existing)
    handler: logging.Handler
    if _RICH_AVAILABLE:
        handler = RichHandler(console=Console(stderr=True), show_time=False, show_path=False)
    else:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
    handler._spherical_trop = True  # type: ignore[attr-defined]
    logger.addHandler(handler)
    logger.setLevel(level)


def _fail(exc: Exception, status: int) -> int:
    log.debug('command failed', exc_info=exc)
    print(f'error: {exc}', file=sys.stderr)
    return status


def _run_batch(args: argparse.Namespace) -> int:
    doc = load_document(args.script)
    if not isinstance(doc, CommandScriptDocument):
        raise DocumentError('expected a command_script document', source=args.script)
    status = EXIT_OK
    for argv in doc.commands:
        argv = list(argv)
        if argv[0] in REPORT_COMMANDS and not any(a == '--format' or a.startswith('--format=') for a in argv):
            argv += ['--format', args.format]
        log.info('batch: %s', ' '.join(argv))
        status = max(status, run_cli(argv))
    return status


def run_cli(argv: Sequence[str] | None = None) -> int:
    """
    Main CLI entry point for SphericalTrop.

    Parameters:
        argv: Command-line arguments to parse. If None, defaults to sys.argv[1:].
              Accepts any sequence of strings (e.g., list, tuple) for testability.

    Returns:
        Exit status: 0 on success, 1 when a validation failed, 2 for usage and document
        errors, 3 for other library errors.

    Usage:
        spherical-trop validate --data sl2_h
        spherical-trop examples gl2 --format json | spherical-trop check-star --data - X
        spherical-trop trop --entry sl2_h --point "(u^2, u^3)" --seed 1
        spherical-trop --version

    """
    parser = build_parser()

    if argv is None:
        argv = sys.argv[1:]

    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    if args.command is None:
        parser.print_help()
        return EXIT_USAGE

    if args.command == COMMAND_DEBUG_INFO:
        print_debug_info()
        return EXIT_OK
    if args.command == COMMAND_COMPLETION:
        print(emit_completion_script(args.shell, KNOWN_COMMANDS, KNOWN_FLAGS, subcommand_flags(parser)))
        return EXIT_OK

    try:
        settings = Settings.from_env()
    except ConfigurationError as exc:
        return _fail(exc, EXIT_USAGE)
    configure_logging(settings.log_level_value, args.verbose)
    ctx = RunContext(
        fmt=args.format,
        samples=args.samples if args.samples is not None else settings.samples,
        seed=args.seed if args.seed is not None else settings.seed,
        entry_range=settings.entry_range,
        jobs=args.jobs,
    )

    try:
        if args.command == COMMAND_BATCH:
            return _run_batch(args)
        report = REPORT_COMMANDS[args.command](args, ctx)
    except _USAGE_ERRORS as exc:
        return _fail(exc, EXIT_USAGE)
    except SphericalTropError as exc:
        return _fail(exc, EXIT_ERROR)

    emit(report, ctx.fmt)
    return EXIT_OK if report.ok else EXIT_VALIDATION_FAILED


__all__ = ['run_cli', 'build_parser', 'configure_logging', 'subcommand_flags']
