"""
Author:
    Inspyre Softworks

Project:
    SphericalTrop

File:
    spherical_trop/__main__.py


Description:
    Entry point for running the package as a module (python -m spherical_trop).

"""
from spherical_trop.cli import cli


if __name__ == "__main__":
    cli()
