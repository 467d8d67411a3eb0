"""
Author:
    Inspyre Softworks

Project:
    SphericalTrop

File:
    spherical_trop/cli/__main__.py


Description:
    Entry point for running the CLI package as a module (python -m spherical_trop.cli).

"""
from spherical_trop.cli import cli


if __name__ == "__main__":
    cli()
