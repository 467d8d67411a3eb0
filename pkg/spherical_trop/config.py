"""
Author:
    Inspyre Softworks

Project:
    SphericalTrop

File:
    spherical_trop/config.py

Description:
    Default parameters and environment-driven settings.

    Library functions take explicit arguments defaulting to the constants below; only the
    CLI reads the environment, through :meth:`Settings.from_env`.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from typing import Final, Mapping

from spherical_trop.errors import ConfigurationError

DEFAULT_SAMPLES: Final[int] = 8
DEFAULT_ENTRY_RANGE: Final[int] = 9
DEFAULT_SEED: Final[int] = 0
DEFAULT_LOG_LEVEL: Final[str] = 'WARNING'

SAMPLES_ENV_VAR: Final[str] = 'SPHTROP_SAMPLES'
ENTRY_RANGE_ENV_VAR: Final[str] = 'SPHTROP_ENTRY_RANGE'
SEED_ENV_VAR: Final[str] = 'SPHTROP_SEED'
LOG_LEVEL_ENV_VAR: Final[str] = 'SPHTROP_LOG_LEVEL'

ENV_VARS: Final[tuple[str, ...]] = (SAMPLES_ENV_VAR, ENTRY_RANGE_ENV_VAR, SEED_ENV_VAR, LOG_LEVEL_ENV_VAR)

_LOG_LEVELS: Final[frozenset[str]] = frozenset({'DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'})


def _read_int(env: Mapping[str, str], name: str, default: int, minimum: int | None) -> int:
    raw = env.get(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        value = int(raw.strip())
    except ValueError:
        raise ConfigurationError(f'{name} must be an integer, got {raw!r}') from None
    if minimum is not None and value < minimum:
        raise ConfigurationError(f'{name} must be >= {minimum}, got {value}')
    return value


@dataclass(frozen=True, slots=True)
class Settings:
    """
    Resolved run settings.

    Attributes:
        samples (int):
            Number of group elements sampled by generic-position tropicalization.

        entry_range (int):
            Sampled group elements have integer entries in ``[-entry_range, entry_range]``.

        seed (int):
            Seed for the sampler.

        log_level (str):
            Name of the logging level for the ``spherical_trop`` logger.
    """

    samples: int = DEFAULT_SAMPLES
    entry_range: int = DEFAULT_ENTRY_RANGE
    seed: int = DEFAULT_SEED
    log_level: str = DEFAULT_LOG_LEVEL

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise ConfigurationError(f'samples must be >= 1, got {self.samples}')
        if self.entry_range < 1:
            raise ConfigurationError(f'entry_range must be >= 1, got {self.entry_range}')
        if self.log_level not in _LOG_LEVELS:
            raise ConfigurationError(f'log level must be one of {sorted(_LOG_LEVELS)}, got {self.log_level!r}')

    @classmethod
    def from_env(cls, env: Mapping[str, str] | None = None) -> Settings:
        """
        Build settings from environment variables.

        Parameters:
            env (Mapping[str, str] | None):
                Mapping to read from; defaults to ``os.environ``.

        Returns:
            Settings:
                The resolved settings.

        Raises:
            ConfigurationError:
                If a variable is set to something unparsable.
        """
        env = os.environ if env is None else env
        level = env.get(LOG_LEVEL_ENV_VAR, '').strip().upper() or DEFAULT_LOG_LEVEL
        return cls(
            samples=_read_int(env, SAMPLES_ENV_VAR, DEFAULT_SAMPLES, 1),
            entry_range=_read_int(env, ENTRY_RANGE_ENV_VAR, DEFAULT_ENTRY_RANGE, 1),
            seed=_read_int(env, SEED_ENV_VAR, DEFAULT_SEED, None),
            log_level=level,
        )

    @property
    def log_level_value(self) -> int:
        return logging.getLevelName(self.log_level)


__all__ = [
    'DEFAULT_SAMPLES',
    'DEFAULT_ENTRY_RANGE',
    'DEFAULT_SEED',
    'DEFAULT_LOG_LEVEL',
    'ENV_VARS',
    'Settings',
]
