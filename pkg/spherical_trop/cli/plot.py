"""
Author:
    Inspyre Softworks

Project:
    SphericalTrop

File:
    spherical_trop/cli/plot.py

Description:
    SVG pictures of rank-2 colored fans: the valuation cone, the cones of the fan, the
    colors and, optionally, the part of the retraction image lying in the open stratum.

"""
from __future__ import annotations

import math
from pathlib import Path
from typing import Final

from spherical_trop.colored_fan import ColoredFan, SphericalData
from spherical_trop.compactify import PImage
from spherical_trop.errors import UsageError
from spherical_trop.polyhedral import RatCone, RatVec, vec_scale

try:
    import matplotlib
    matplotlib.use('Agg')
    from matplotlib.collections import PolyCollection
    from matplotlib.figure import Figure
    _MATPLOTLIB_AVAILABLE: bool = True
except ImportError:
    _MATPLOTLIB_AVAILABLE = False


WINDOW: Final[float] = 3.0
SVG_SALT: Final[str] = 'spherical-trop'

VCONE_STYLE: Final[dict] = {'facecolor': '#dbe9f6', 'edgecolor': 'none', 'zorder': 0}
CONE_STYLE: Final[dict] = {'facecolor': '#f6d9b8', 'edgecolor': '#a05a00', 'alpha': 0.7, 'zorder': 1}
IMAGE_STYLE: Final[dict] = {'facecolor': 'none', 'edgecolor': '#2f6b2f', 'hatch': '//', 'zorder': 2}


def _to_screen(v: RatVec) -> tuple[float, float]:
    """Scale ``v`` onto the boundary of the drawing window."""
    scale = max(abs(x) for x in v)
    return float(v[0] / scale * WINDOW), float(v[1] / scale * WINDOW)


def _polygon(cone: RatCone) -> list[tuple[float, float]]:
    """Vertices of ``cone`` clipped to the window, in counter-clockwise order."""
    points = [_to_screen(r) for r in cone.rays]
    points += [_to_screen(v) for line in cone.lines for v in (line, vec_scale(-1, line))]
    points += [
        (WINDOW * sx, WINDOW * sy)
        for sx in (-1, 1) for sy in (-1, 1)
        if cone.contains((sx, sy))
    ]
    if not cone.lines:
        points.append((0.0, 0.0))
    inner = cone.relative_interior_point()
    cx, cy = (_to_screen(inner) if any(inner) else (0.0, 0.0))
    cx, cy = cx / 2, cy / 2
    unique = sorted(set(points), key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
    return unique


def _draw_cone(ax, cone: RatCone, style: dict) -> None:
    if cone.linear_dim == 2:
        ax.add_collection(PolyCollection([_polygon(cone)], **style))
    elif cone.linear_dim == 1:
        for v in cone.rays + cone.lines + tuple(vec_scale(-1, line) for line in cone.lines):
            x, y = _to_screen(v)
            ax.plot([0, x], [0, y], color=style.get('edgecolor', 'black'), linewidth=2, zorder=3)


def plot_fan(
        sd: SphericalData,
        fan: ColoredFan,
        out: Path,
        title: str | None = None,
        image: PImage | None = None,
) -> Path:
    """
    Draw ``fan`` over the valuation cone and write it to ``out`` as SVG.

    Parameters:
        image (PImage | None):
            When given, the pieces of the retraction image over the zero cone are hatched.

    Returns:
        Path:
            ``out``.

    Raises:
        UsageError:
            If matplotlib is not installed or ``sd`` does not have rank 2.
    """
    if not _MATPLOTLIB_AVAILABLE:
        raise UsageError('plot needs matplotlib; install the "plot" extra')
    if sd.dim != 2:
        raise UsageError(f'plot draws rank-2 fans, got rank {sd.dim}')

    with matplotlib.rc_context({'svg.hashsalt': SVG_SALT, 'svg.fonttype': 'none'}):
        fig = Figure(figsize=(5, 5))
        ax = fig.add_subplot()
        _draw_cone(ax, sd.vcone, VCONE_STYLE)
        for cc in fan.cones:
            _draw_cone(ax, cc.cone, CONE_STYLE)
        if image is not None:
            for face, pieces in image.strata:
                if face.cone.is_zero:
                    for piece in pieces:
                        _draw_cone(ax, piece, IMAGE_STYLE)
        for color in sd.colors:
            x, y = float(color.rho[0]), float(color.rho[1])
            ax.plot([x], [y], marker='o', color='#b00020', zorder=4)
            ax.annotate(color.name, (x, y), textcoords='offset points', xytext=(6, 6))
        ax.plot([0], [0], marker='o', color='black', markersize=3, zorder=4)
        ax.set_xlim(-WINDOW, WINDOW)
        ax.set_ylim(-WINDOW, WINDOW)
        ax.set_aspect('equal', adjustable='box')
        ax.set_xlabel(sd.character_basis[0])
        ax.set_ylabel(sd.character_basis[1])
        if title:
            ax.set_title(title)
        out.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(out, format='svg', metadata={'Date': None})
    return out


__all__ = ['plot_fan']
