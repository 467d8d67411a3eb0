"""
Author:
    Inspyre Softworks

Project:
    SphericalTrop

File:
    spherical_trop/errors.py

Description:
    Exception hierarchy shared by the library and the CLI.
"""

from __future__ import annotations


class SphericalTropError(Exception):
    """Base class for every error raised by SphericalTrop."""


class DimensionMismatchError(SphericalTropError, ValueError):
    """Two objects that must live in the same space have different dimensions."""

    def __init__(self, what: str, expected: int, got: int) -> None:
        super().__init__(f'{what}: expected dimension {expected}, got {got}')
        self.expected = expected
        self.got = got


class NotAFaceError(SphericalTropError, ValueError):
    """A cone passed as a face is not a face of the given cone (or fan)."""


class NotStrictlyConvexError(SphericalTropError, ValueError):
    """A cone that must be strictly convex contains a line."""


class InvalidFanError(SphericalTropError, ValueError):
    """A colored fan failed validation where a valid fan is required."""


class UnknownColorError(SphericalTropError, KeyError):
    """A colored cone names a color its spherical data does not have."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ''


class UnknownEntryError(SphericalTropError, KeyError):
    """No registry entry matches the requested name."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ''


class UnknownCharacterError(SphericalTropError, KeyError):
    """A registry entry has no semi-invariant of the requested character."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ''


class ZeroCoordinateError(SphericalTropError, ValueError):
    """A point has a zero coordinate where only torus points are accepted."""


class DomainError(SphericalTropError, ValueError):
    """An input lies outside the domain of an evaluator or map."""


class NoStratumError(SphericalTropError, ValueError):
    """A direction vector lies in the relative interior of no stratum."""


class SamplingInstabilityError(SphericalTropError, RuntimeError):
    """Generic-position sampling produced different answers for s and 2s samples."""


class ParseError(SphericalTropError, ValueError):
    """Text could not be read as a series, point or Laurent polynomial."""


class ConfigurationError(SphericalTropError, ValueError):
    """An environment setting could not be parsed."""


class DocumentError(SphericalTropError, ValueError):
    """
    A JSON input document is malformed.

    Parameters:
        message (str):
            What went wrong.

        source (str | None):
            Path (or ``'-'``) the document was read from.

        location (str | None):
            JSON pointer-style location inside the document, for example
            ``/cones/2/rays/0``.
    """

    def __init__(self, message: str, source: str | None = None, location: str | None = None) -> None:
        self.message = message
        self.source = source
        self.location = location
        super().__init__(self._render())

    def _render(self) -> str:
        where = ''
        if self.source:
            where += self.source
        if self.location:
            where += f' at {self.location}'
        return f'{where}: {self.message}' if where else self.message

    def with_source(self, source: str) -> DocumentError:
        """Return a copy of this error tagged with ``source``."""
        return DocumentError(self.message, source, self.location)


class UsageError(SphericalTropError, ValueError):
    """Command-line options that are individually valid but do not fit together."""


__all__ = [
    'SphericalTropError',
    'DimensionMismatchError',
    'NotAFaceError',
    'NotStrictlyConvexError',
    'InvalidFanError',
    'UnknownColorError',
    'UnknownEntryError',
    'UnknownCharacterError',
    'ZeroCoordinateError',
    'DomainError',
    'NoStratumError',
    'SamplingInstabilityError',
    'ParseError',
    'ConfigurationError',
    'DocumentError',
    'UsageError',
]
