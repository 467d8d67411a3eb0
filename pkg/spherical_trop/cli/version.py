"""
Author:
    Inspyre Softworks

Project:
    SphericalTrop

File:
    spherical_trop/cli/version.py


Description:
    Version and debug information utilities for the SphericalTrop CLI.

"""
from __future__ import annotations

import os
import platform
from importlib import metadata
from typing import Final

from spherical_trop.config import ENV_VARS

try:
    from rich.console import Console
    from rich.panel import Panel
    from rich.markdown import Markdown
    _RICH_AVAILABLE: bool = True
except ImportError:
    _RICH_AVAILABLE = False


DIST_NAME: Final[str] = 'spherical-trop'
DEPENDENCIES: Final[tuple[str, ...]] = ('sympy', 'rich', 'matplotlib')


def _get_version() -> str:
    """Get the installed version of SphericalTrop."""
    return _get_metadata_version(DIST_NAME, 'unknown')


def _get_dependency_version(name: str) -> str:
    """Get the installed version of a dependency."""
    return _get_metadata_version(name, 'not installed')


def _get_metadata_version(name: str, fallback: str) -> str:
    """
    Get version from package metadata.

    Parameters:
        name: Package name to lookup
        fallback: Default value if package not found

    Returns:
        Version string or fallback value
    """
    try:
        return metadata.version(name)
    except metadata.PackageNotFoundError:
        return fallback


def print_version_info() -> None:
    """Print formatted version information to the console."""
    if not _RICH_AVAILABLE:
        print(f'SphericalTrop version: {_get_version()}')
        print(f'Python: {platform.python_version()}')
        print(f'Platform: {platform.platform()}')
        for name in DEPENDENCIES:
            print(f'{name}: {_get_dependency_version(name)}')
        return

    dependencies = '  \n'.join(f'**{name}:** {_get_dependency_version(name)}' for name in DEPENDENCIES)
    markdown_text: str = f"""
# Version Information

**SphericalTrop:** {_get_version()}

----

**Python:** {platform.python_version()}
**Platform:** {platform.platform()}

----

{dependencies}
""".strip()

    Console().print(Panel(Markdown(markdown_text), border_style='blue', padding=(1, 2)))


def print_debug_info() -> None:
    """Print versions, platform and the ``SPHTROP_*`` environment in Rich Markdown format."""
    env_vars = {name: os.getenv(name, 'not set') for name in ENV_VARS}

    if not _RICH_AVAILABLE:
        print('SphericalTrop Debug Information')
        print('=' * 40)
        print(f'SphericalTrop: {_get_version()}')
        print(f'Python: {platform.python_version()}')
        print(f'Platform: {platform.platform()}')
        for name in DEPENDENCIES:
            print(f'{name}: {_get_dependency_version(name)}')
        for name, value in env_vars.items():
            print(f'{name}: {value}')
        print(f'Working Directory: {os.getcwd()}')
        return

    dependency_rows = '\n'.join(f'| **{name}** | `{_get_dependency_version(name)}` |' for name in DEPENDENCIES)
    env_rows = '\n'.join(f'| **{name}** | `{value}` |' for name, value in env_vars.items())
    markdown_text = f"""
# SphericalTrop Debug Information

## Version Information

| Component | Version |
|-----------|---------|
| **SphericalTrop** | `{_get_version()}` |
| **Python** | `{platform.python_version()}` |
{dependency_rows}

## Platform Information

| Property | Value |
|----------|-------|
| **Platform** | `{platform.platform()}` |
| **System** | `{platform.system()}` |
| **Machine** | `{platform.machine()}` |

## Environment

| Variable | Value |
|----------|-------|
| **Working Directory** | `{os.getcwd()}` |
{env_rows}

---

*Copy this information when reporting issues or requesting support.*
""".strip()

    panel = Panel(
        Markdown(markdown_text),
        border_style='cyan',
        padding=(1, 2),
        title='[bold cyan]Debug Information[/bold cyan]',
    )
    Console().print(panel)


__all__ = ['DIST_NAME', 'print_version_info', 'print_debug_info']
