"""
Author:
    Inspyre Softworks

Project:
    SphericalTrop

File:
    spherical_trop/colored_fan.py

Description:
    Luna-Vust combinatorics: spherical data, colored cones and fans, colored faces, the star
    of a colored cone, and the condition that every cone of a fan lies in the valuation cone.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from spherical_trop.errors import DimensionMismatchError, NotAFaceError, UnknownColorError
from spherical_trop.polyhedral import (
    QuotientMap,
    RatCone,
    RatVec,
    VecLike,
    as_vec,
    face_lattice,
    format_vec,
    intersect,
    is_zero,
    membership,
    Membership,
    project_cone,
    quotient_by_span,
    rank,
    relative_interior_meets,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Color:
    """A color ``D`` together with its image ``rho(D)`` in ``N_Q``."""

    name: str
    rho: RatVec

    def __str__(self) -> str:
        return f'{self.name}{format_vec(self.rho)}'


@dataclass(frozen=True, slots=True)
class SphericalData:
    """
    Combinatorial invariants of a spherical homogeneous space.

    Attributes:
        dim (int):
            Rank of the lattice ``N``.

        vcone (RatCone):
            The valuation cone, in ``Q^dim``.

        colors (tuple[Color, ...]):
            The colors with their images under ``rho``.

        character_basis (tuple[str, ...]):
            Names of the characters whose duals are the coordinates of ``N_Q``.
    """

    dim: int
    vcone: RatCone
    colors: tuple[Color, ...] = ()
    character_basis: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.vcone.dim != self.dim:
            raise DimensionMismatchError('valuation cone', self.dim, self.vcone.dim)
        for color in self.colors:
            if len(color.rho) != self.dim:
                raise DimensionMismatchError(f'color {color.name}', self.dim, len(color.rho))
        names = [c.name for c in self.colors]
        if len(set(names)) != len(names):
            raise ValueError(f'color names must be unique, got {names}')
        if not self.character_basis:
            object.__setattr__(self, 'character_basis', tuple(f'chi{i + 1}' for i in range(self.dim)))
        if len(self.character_basis) != self.dim:
            raise DimensionMismatchError('character basis', self.dim, len(self.character_basis))

    @classmethod
    def create(
            cls,
            dim: int,
            vcone_halfspaces: Iterable[VecLike] = (),
            colors: Mapping[str, VecLike] | None = None,
            basis_names: Sequence[str] = (),
    ) -> SphericalData:
        """Build spherical data with the valuation cone given by inner normals."""
        vcone = RatCone.from_halfspaces(dim, vcone_halfspaces)
        color_list = tuple(Color(name, as_vec(rho, dim, f'color {name}')) for name, rho in (colors or {}).items())
        return cls(dim, vcone, color_list, tuple(basis_names))

    @property
    def color_names(self) -> frozenset[str]:
        return frozenset(c.name for c in self.colors)

    def color(self, name: str) -> Color:
        for c in self.colors:
            if c.name == name:
                return c
        raise UnknownColorError(f'unknown color {name!r}; known colors: {sorted(self.color_names)}')


@dataclass(frozen=True, slots=True)
class SphericalDataReport:
    spans: bool
    cosimplicial: bool

    @property
    def ok(self) -> bool:
        return self.spans and self.cosimplicial


def validate_spherical_data(sd: SphericalData) -> SphericalDataReport:
    """Check that the valuation cone spans ``N_Q`` and has linearly independent facet normals."""
    hs = sd.vcone.halfspaces
    return SphericalDataReport(
        spans=sd.vcone.linear_dim == sd.dim,
        cosimplicial=rank(hs, sd.dim) == len(hs),
    )


@dataclass(frozen=True, slots=True)
class ColoredCone:
    """A cone paired with a set of color names."""

    cone: RatCone
    colors: frozenset[str] = frozenset()

    @classmethod
    def of(cls, dim: int, rays: Iterable[VecLike], colors: Iterable[str] = ()) -> ColoredCone:
        return cls(RatCone.from_rays(dim, rays), frozenset(colors))

    @property
    def sort_key(self) -> tuple:
        return self.cone.linear_dim, self.cone.rays, tuple(sorted(self.colors))

    def label(self) -> str:
        colors = ', '.join(sorted(self.colors))
        return f'({self.cone}, {{{colors}}})'

    __str__ = label


@dataclass(frozen=True, slots=True)
class ColoredConeReport:
    """Outcome of the colored-cone conditions, one flag per condition."""

    cc1: bool
    cc2: bool
    cc3: bool
    strictly_convex: bool

    @property
    def ok(self) -> bool:
        return self.cc1 and self.cc2 and self.cc3 and self.strictly_convex

    def failures(self) -> list[str]:
        names = ('cc1', 'cc2', 'cc3', 'strictly_convex')
        return [name for name in names if not getattr(self, name)]


def _rhos(sd: SphericalData, colors: Iterable[str]) -> list[RatVec]:
    return [sd.color(name).rho for name in sorted(colors)]


def validate_colored_cone(sd: SphericalData, cc: ColoredCone) -> ColoredConeReport:
    """
    Check the colored-cone conditions.

    * CC1: the cone is generated by the images of its colors and the rays of its
      intersection with the valuation cone.
    * CC2: the relative interior of the cone meets the valuation cone.
    * CC3: no color maps to 0.

    Raises:
        UnknownColorError:
            If the cone names a color ``sd`` does not have.

        DimensionMismatchError:
            If the cone is not in ``N_Q``.
    """
    if cc.cone.dim != sd.dim:
        raise DimensionMismatchError('colored cone', sd.dim, cc.cone.dim)
    rhos = _rhos(sd, cc.colors)
    inside = intersect(cc.cone, sd.vcone)
    hull = RatCone.from_rays(sd.dim, rhos + list(inside.generators))
    return ColoredConeReport(
        cc1=hull == cc.cone,
        cc2=relative_interior_meets(cc.cone, sd.vcone),
        cc3=not any(is_zero(rho) for rho in rhos),
        strictly_convex=cc.cone.is_strictly_convex,
    )


def colored_faces(sd: SphericalData, cc: ColoredCone) -> tuple[ColoredCone, ...]:
    """
    Colored faces of ``cc``: faces whose relative interior meets the valuation cone, each
    carrying the colors of ``cc`` that land in it.
    """
    out = []
    for face in face_lattice(cc.cone):
        if not relative_interior_meets(face, sd.vcone):
            continue
        colors = frozenset(name for name in cc.colors if face.contains(sd.color(name).rho))
        out.append(ColoredCone(face, colors))
    return tuple(sorted(out, key=lambda c: c.sort_key))


@dataclass(frozen=True, slots=True)
class ColoredFan:
    """
    A finite family of colored cones.

    The cones are kept as given so validation can see duplicates; :meth:`canonical` returns
    the sorted, duplicate-free form used for comparisons.
    """

    cones: tuple[ColoredCone, ...] = ()

    @classmethod
    def generated_by(cls, sd: SphericalData, cones: Iterable[ColoredCone]) -> ColoredFan:
        """The fan consisting of ``cones`` and all of their colored faces."""
        members: set[ColoredCone] = set()
        for cc in cones:
            members.update(colored_faces(sd, cc))
            members.add(cc)
        return cls(tuple(sorted(members, key=lambda c: c.sort_key)))

    def canonical(self) -> ColoredFan:
        return ColoredFan(tuple(sorted(set(self.cones), key=lambda c: c.sort_key)))

    @property
    def dim(self) -> int | None:
        return self.cones[0].cone.dim if self.cones else None

    def maximal_cones(self) -> tuple[ColoredCone, ...]:
        """Members whose cone is not properly contained in another member's cone."""
        out = []
        for cc in self.canonical().cones:
            if not any(other.cone != cc.cone and other.cone.contains_cone(cc.cone) for other in self.cones):
                out.append(cc)
        return tuple(out)

    def __contains__(self, cc: object) -> bool:
        return cc in self.cones

    def __iter__(self):
        return iter(self.cones)

    def __len__(self) -> int:
        return len(self.cones)


@dataclass(frozen=True, slots=True)
class FanReport:
    """
    Outcome of fan validation.

    Attributes:
        missing_faces:
            ``(member index, colored face)`` pairs for colored faces absent from the fan.

        overlaps:
            Index pairs of distinct members whose relative interiors meet inside the
            valuation cone.

        cone_reports:
            Per-member colored-cone reports, in member order.
    """

    missing_faces: tuple[tuple[int, ColoredCone], ...] = ()
    overlaps: tuple[tuple[int, int], ...] = ()
    cone_reports: tuple[ColoredConeReport, ...] = field(default_factory=tuple)

    @property
    def face_closed(self) -> bool:
        return not self.missing_faces

    @property
    def unique(self) -> bool:
        return not self.overlaps

    @property
    def cones_valid(self) -> bool:
        return all(r.ok for r in self.cone_reports)

    @property
    def ok(self) -> bool:
        return self.face_closed and self.unique and self.cones_valid


def validate_colored_fan(sd: SphericalData, fan: ColoredFan) -> FanReport:
    """
    Validate a colored fan: face closure, uniqueness of the member whose relative interior
    contains a given invariant valuation, and the colored-cone conditions per member.
    """
    members = set(fan.cones)
    missing = []
    for i, cc in enumerate(fan.cones):
        for face in colored_faces(sd, cc):
            if face not in members:
                missing.append((i, face))

    overlaps = []
    for i, a in enumerate(fan.cones):
        for j in range(i + 1, len(fan.cones)):
            b = fan.cones[j]
            w = intersect(intersect(a.cone, b.cone), sd.vcone).relative_interior_point()
            if (membership(a.cone, w) is Membership.RELATIVE_INTERIOR
                    and membership(b.cone, w) is Membership.RELATIVE_INTERIOR):
                overlaps.append((i, j))

    reports = tuple(validate_colored_cone(sd, cc) for cc in fan.cones)
    report = FanReport(tuple(missing), tuple(overlaps), reports)
    log.debug('fan validation: closed=%s unique=%s cones=%s', report.face_closed, report.unique, report.cones_valid)
    return report


def check_star(sd: SphericalData, fan: ColoredFan) -> bool:
    """Whether every cone of ``fan`` lies in the valuation cone."""
    return all(sd.vcone.contains(g) for cc in fan.cones for g in cc.cone.generators)


def star_fan(
        sd: SphericalData,
        fan: ColoredFan,
        tau: ColoredCone,
        dominant_colors: Iterable[str] | None = None,
) -> tuple[SphericalData, ColoredFan, QuotientMap]:
    """
    Quotient data and fan describing the orbit closure attached to ``tau``.

    The new lattice is ``N / span(tau)``; the new valuation cone and cones are images under
    the quotient map. Cones come from the members having ``tau`` as a colored face, each
    keeping only colors outside ``dominant_colors``. Colors with ``rho`` in ``span(tau)``
    are dropped from the quotient data.

    Parameters:
        dominant_colors (Iterable[str] | None):
            Colors mapping dominantly onto the orbit. When omitted, no color of a member
            containing ``tau`` counts as dominant.

    Returns:
        tuple[SphericalData, ColoredFan, QuotientMap]:
            The quotient data, the star fan and the quotient map.

    Raises:
        NotAFaceError:
            If ``tau`` is not a member of ``fan``.
    """
    if tau not in fan:
        raise NotAFaceError(f'{tau.label()} is not a member of the fan')
    q = quotient_by_span(tau.cone)
    members = [cc for cc in fan.cones if tau in colored_faces(sd, cc)]
    dominant = frozenset(dominant_colors or ())
    unknown = dominant - sd.color_names
    if unknown:
        raise UnknownColorError(f'unknown dominant colors {sorted(unknown)}')
    # colors whose rho lies in span(tau) have no image in the quotient
    images_of_colors = tuple(
        Color(c.name, q.apply(c.rho)) for c in sd.colors if c.name not in dominant
    )
    new_colors = tuple(c for c in images_of_colors if not is_zero(c.rho))
    kept = frozenset(c.name for c in new_colors)

    if tau.cone.is_zero:
        basis = sd.character_basis
    else:
        basis = tuple(f'q{i + 1}' for i in range(q.target_dim))
    new_sd = SphericalData(q.target_dim, project_cone(sd.vcone, q), new_colors, basis)
    images = {ColoredCone(project_cone(cc.cone, q), cc.colors & kept) for cc in members}
    new_fan = ColoredFan(tuple(sorted(images, key=lambda c: c.sort_key)))
    log.debug('star of %s: %d members -> %d cones', tau.label(), len(members), len(new_fan))
    return new_sd, new_fan, q


__all__ = [
    'Color',
    'SphericalData',
    'SphericalDataReport',
    'validate_spherical_data',
    'ColoredCone',
    'ColoredConeReport',
    'validate_colored_cone',
    'colored_faces',
    'ColoredFan',
    'FanReport',
    'validate_colored_fan',
    'check_star',
    'star_fan',
]
