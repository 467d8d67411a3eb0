"""
Author:
    Inspyre Softworks

Project:
    SphericalTrop

File:
    spherical_trop/cli/reports.py

Description:
    Command reports and their text or JSON rendering.

"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Any, Final, TextIO

from spherical_trop.cli.documents import dumps

try:
    from rich.console import Console
    from rich.table import Table
    _RICH_AVAILABLE: bool = True
except ImportError:
    _RICH_AVAILABLE = False


FORMAT_TEXT: Final[str] = 'text'
FORMAT_JSON: Final[str] = 'json'
FORMATS: Final[tuple[str, ...]] = (FORMAT_TEXT, FORMAT_JSON)


@dataclass(frozen=True, slots=True)
class Report:
    """
    Outcome of one command.

    Attributes:
        command (str):
            Command name, echoed in the JSON envelope.

        result (dict[str, Any]):
            JSON-ready payload.

        lines (tuple[str, ...]):
            Text rendering, printed after the table.

        headers (tuple[str, ...]):
            Table headers; no table is printed when empty.

        rows (tuple[tuple[str, ...], ...]):
            Table rows.

        ok (bool):
            False when a validation failed; the command then exits with status 1.

        bare (bool):
            Emit ``result`` itself as JSON, without the report envelope. Used when the
            result is a document meant to be piped into another command.
    """

    command: str
    result: dict[str, Any]
    lines: tuple[str, ...] = ()
    headers: tuple[str, ...] = ()
    rows: tuple[tuple[str, ...], ...] = field(default_factory=tuple)
    title: str | None = None
    ok: bool = True
    bare: bool = False

    def envelope(self) -> dict[str, Any]:
        return {'kind': 'report', 'command': self.command, 'ok': self.ok, 'result': self.result}


def _emit_table_plain(report: Report, out: TextIO) -> None:
    if report.title:
        print(report.title, file=out)
    widths = [len(h) for h in report.headers]
    for row in report.rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    print('  '.join(h.ljust(w) for h, w in zip(report.headers, widths)).rstrip(), file=out)
    for row in report.rows:
        print('  '.join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip(), file=out)


def _emit_table_rich(report: Report, out: TextIO) -> None:
    table = Table(title=report.title)
    for header in report.headers:
        table.add_column(header)
    for row in report.rows:
        table.add_row(*row)
    Console(file=out, soft_wrap=True).print(table)


def emit(report: Report, fmt: str = FORMAT_TEXT, out: TextIO | None = None) -> None:
    """
    Write ``report`` to ``out`` (standard output by default).

    JSON output is the envelope ``{"kind": "report", "command", "ok", "result"}`` and is
    byte-identical for identical results.
    """
    out = out if out is not None else sys.stdout
    if fmt == FORMAT_JSON:
        print(dumps(report.result if report.bare else report.envelope()), file=out)
        return
    if report.headers:
        if _RICH_AVAILABLE and out.isatty():
            _emit_table_rich(report, out)
        else:
            _emit_table_plain(report, out)
    for line in report.lines:
        print(line, file=out)


__all__ = ['FORMAT_TEXT', 'FORMAT_JSON', 'FORMATS', 'Report', 'emit']
