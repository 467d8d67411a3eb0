"""
Author:
    Inspyre Softworks

Project:
    SphericalTrop

File:
    spherical_trop/cli/__init__.py


Description:
    CLI sub-package for SphericalTrop: JSON documents, command reports and the
    ``spherical-trop`` entry point.

    The library modules do not import from here, so they can be used without the CLI
    extras (rich, matplotlib).

"""
import sys

from spherical_trop.cli.main import run_cli


def cli() -> None:
    """
    Main entry point for the spherical-trop command-line tool.

    This function is called when the `spherical-trop` command is executed.
    """
    sys.exit(run_cli())


__all__ = ["cli"]
