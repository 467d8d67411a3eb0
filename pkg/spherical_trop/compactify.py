"""
Author:
    Inspyre Softworks

Project:
    SphericalTrop

File:
    spherical_trop/compactify.py

Description:
    Stratified tropicalization spaces and canonical compactifications of cones.

    A point of ``hom(sigma^vee, [0, inf])`` is stored as a face ``tau`` of ``sigma`` together
    with a finite functional on ``N / span(tau)``; its value at ``u`` in ``sigma^vee`` is the
    functional applied to ``u`` when ``u`` vanishes on ``tau`` and ``INFINITY`` otherwise.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Literal

from spherical_trop.colored_fan import (
    ColoredCone,
    ColoredFan,
    SphericalData,
    check_star,
    colored_faces,
    validate_colored_fan,
)
from spherical_trop.errors import (
    DimensionMismatchError,
    DomainError,
    InvalidFanError,
    NoStratumError,
    NotAFaceError,
    NotStrictlyConvexError,
)
from spherical_trop.polyhedral import (
    Membership,
    QuotientMap,
    RatCone,
    RatVec,
    VecLike,
    as_vec,
    dot,
    dual_cone,
    face_lattice,
    format_vec,
    intersect,
    is_face,
    is_zero,
    membership,
    project_cone,
    quotient_by_span,
    vec_scale,
)
from spherical_trop.puiseux import INFINITY, AdditiveVal

log = logging.getLogger(__name__)

CompactifyMode = Literal['toric', 'colored', 'image']


@dataclass(frozen=True, slots=True)
class ExtendedPoint:
    """
    A point of the canonical compactification of ``sigma``.

    Attributes:
        sigma (RatCone):
            The cone whose dual the point is a semigroup map on.

        stratum (ColoredCone):
            The face ``tau`` (with its colors) whose stratum contains the point.

        functional (RatVec):
            Coordinates in ``N / span(tau)`` with respect to ``quotient``.

        quotient (QuotientMap):
            ``quotient_by_span(tau)``.
    """

    sigma: RatCone
    stratum: ColoredCone
    functional: RatVec
    quotient: QuotientMap

    def __post_init__(self) -> None:
        if len(self.functional) != self.quotient.target_dim:
            raise DimensionMismatchError('functional', self.quotient.target_dim, len(self.functional))

    @property
    def tau(self) -> RatCone:
        return self.stratum.cone

    def evaluate(self, u: VecLike) -> AdditiveVal:
        return evaluate_extended(self, u)

    def __str__(self) -> str:
        return f'{self.stratum.label()} @ {format_vec(self.functional)}'


def _as_colored(tau: RatCone | ColoredCone) -> ColoredCone:
    return tau if isinstance(tau, ColoredCone) else ColoredCone(tau)


def extend_functional(sigma: RatCone, tau: RatCone | ColoredCone, alpha: VecLike) -> ExtendedPoint:
    """
    The point of ``hom(sigma^vee, [0, inf])`` in the stratum of ``tau`` with functional ``alpha``.

    Raises:
        NotAFaceError:
            If ``tau`` is not a face of ``sigma``.

        DimensionMismatchError:
            If ``alpha`` is not in ``N / span(tau)``.
    """
    stratum = _as_colored(tau)
    if stratum.cone.dim != sigma.dim or not is_face(stratum.cone, sigma):
        raise NotAFaceError(f'{stratum.cone} is not a face of {sigma}')
    q = quotient_by_span(stratum.cone)
    return ExtendedPoint(sigma, stratum, as_vec(alpha, q.target_dim, 'functional'), q)


def evaluate_extended(p: ExtendedPoint, u: VecLike) -> AdditiveVal:
    """
    Value of ``p`` at ``u``: the functional when ``u`` vanishes on ``tau``, else ``INFINITY``.

    Raises:
        DomainError:
            If ``u`` is not in the dual cone of ``p.sigma``.
    """
    vec = as_vec(u, p.sigma.dim, 'dual vector')
    if not dual_cone(p.sigma).contains(vec):
        raise DomainError(f'{format_vec(vec)} is not in the dual of {p.sigma}')
    if any(dot(vec, g) != 0 for g in p.tau.generators):
        return INFINITY
    coeffs = p.quotient.lift_coefficients(vec)
    return dot(coeffs, p.functional)


# ---------------------------------------------------------------------------
# Tropicalization spaces
# ---------------------------------------------------------------------------

def _require_valid(sd: SphericalData, fan: ColoredFan) -> None:
    report = validate_colored_fan(sd, fan)
    if not report.ok:
        raise InvalidFanError(
            f'fan is not valid (face closed: {report.face_closed}, unique: {report.unique}, '
            f'cones valid: {report.cones_valid})'
        )


@dataclass(frozen=True, slots=True)
class TropSpace:
    """
    The disjoint union, over the colored cones of a fan, of the projected valuation cones.
    """

    base: SphericalData
    fan: ColoredFan
    strata: tuple[tuple[ColoredCone, RatCone], ...]

    def __len__(self) -> int:
        return len(self.strata)

    def stratum_for(self, cc: ColoredCone) -> RatCone:
        for key, cone in self.strata:
            if key == cc:
                return cone
        raise NotAFaceError(f'{cc.label()} is not a colored cone of the fan')

    def contains(self, p: ExtendedPoint) -> bool:
        """Whether ``p`` lies on its stratum (its functional is in the projected valuation cone)."""
        try:
            return self.stratum_for(p.stratum).contains(p.functional)
        except (NotAFaceError, DimensionMismatchError):
            return False


def build_trop_space(sd: SphericalData, fan: ColoredFan) -> TropSpace:
    """
    Build the tropicalization space of the embedding described by ``fan``.

    Raises:
        InvalidFanError:
            If ``fan`` fails validation.
    """
    _require_valid(sd, fan)
    strata = tuple(
        (cc, project_cone(sd.vcone, quotient_by_span(cc.cone)))
        for cc in fan.canonical().cones
    )
    return TropSpace(sd, fan, strata)


# ---------------------------------------------------------------------------
# Canonical compactifications
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class CompactifiedCone:
    """
    The closure of a cone inside its canonical compactification, stratum by stratum.

    Each entry of ``strata`` pairs a face (with its colors, if any) with the piece of the
    closure lying in that face's stratum, a cone in ``N / span(face)``.
    """

    sigma: RatCone
    mode: CompactifyMode
    strata: tuple[tuple[ColoredCone, RatCone], ...]

    def __len__(self) -> int:
        return len(self.strata)

    @property
    def faces(self) -> tuple[ColoredCone, ...]:
        return tuple(face for face, _ in self.strata)

    def piece(self, face: RatCone | ColoredCone) -> RatCone:
        for key, cone in self.strata:
            if key == face or key.cone == face:
                return cone
        raise NotAFaceError(f'{face} has no stratum in this compactification')


def _sigma_parts(sigma: RatCone | ColoredCone) -> tuple[RatCone, ColoredCone]:
    cc = _as_colored(sigma)
    if not cc.cone.is_strictly_convex:
        raise NotStrictlyConvexError(f'{cc.cone} contains a line')
    return cc.cone, cc


def compactify_cone(sigma: RatCone | ColoredCone, sd: SphericalData | None = None) -> CompactifiedCone:
    """
    Canonical compactification of ``sigma``.

    Without ``sd`` (toric mode) every face contributes a stratum. With ``sd`` (colored mode)
    only the colored faces do, i.e. faces whose relative interior meets the valuation cone.
    The piece over a face is the image of ``sigma`` in ``N / span(face)``.

    Raises:
        NotStrictlyConvexError:
            If ``sigma`` contains a line.
    """
    cone, cc = _sigma_parts(sigma)
    if sd is None:
        faces: Iterable[ColoredCone] = (ColoredCone(f) for f in face_lattice(cone))
        mode: CompactifyMode = 'toric'
    else:
        faces = colored_faces(sd, cc)
        mode = 'colored'
    strata = tuple((face, project_cone(cone, quotient_by_span(face.cone))) for face in faces)
    return CompactifiedCone(cone, mode, strata)


def _image_compactification(sd: SphericalData, cc: ColoredCone) -> CompactifiedCone:
    cone, cc = _sigma_parts(cc)
    inside = intersect(cone, sd.vcone)
    strata = tuple(
        (face, project_cone(inside, quotient_by_span(face.cone)))
        for face in colored_faces(sd, cc)
    )
    return CompactifiedCone(cone, 'image', strata)


@dataclass(frozen=True, slots=True)
class PImage:
    """
    Image of the retraction inside the tropicalization of an embedding.

    Attributes:
        satisfies_star (bool):
            Whether every cone of the fan lies in the valuation cone.

        per_cone (tuple[tuple[ColoredCone, CompactifiedCone], ...]):
            The closure for each maximal colored cone.

        strata (tuple[tuple[ColoredCone, tuple[RatCone, ...]], ...]):
            Pieces glued along shared colored faces: for each colored cone of the fan, the
            distinct pieces contributed by the maximal cones containing it.
    """

    satisfies_star: bool
    per_cone: tuple[tuple[ColoredCone, CompactifiedCone], ...]
    strata: tuple[tuple[ColoredCone, tuple[RatCone, ...]], ...]

    def __len__(self) -> int:
        return len(self.strata)

    def pieces(self, cc: ColoredCone) -> tuple[RatCone, ...]:
        for key, pieces in self.strata:
            if key == cc:
                return pieces
        raise NotAFaceError(f'{cc.label()} has no stratum in the image')


def p_image(sd: SphericalData, fan: ColoredFan) -> PImage:
    """
    Describe the image of the retraction in ``trop(X)``.

    When every cone lies in the valuation cone, each maximal cone contributes its colored
    canonical compactification. Otherwise a maximal cone ``sigma`` contributes the closure
    of ``sigma`` intersected with the valuation cone, stratified by the colored faces of
    ``sigma``.

    Raises:
        InvalidFanError:
            If ``fan`` fails validation.
    """
    _require_valid(sd, fan)
    star = check_star(sd, fan)
    per_cone = []
    glued: dict[ColoredCone, list[RatCone]] = {}
    for cc in fan.maximal_cones():
        closure = compactify_cone(cc, sd) if star else _image_compactification(sd, cc)
        per_cone.append((cc, closure))
        for face, piece in closure.strata:
            bucket = glued.setdefault(face, [])
            if piece not in bucket:
                bucket.append(piece)
    strata = tuple(
        (face, tuple(pieces))
        for face, pieces in sorted(glued.items(), key=lambda item: item[0].sort_key)
    )
    log.debug('p-image: star=%s, %d maximal cones, %d strata', star, len(per_cone), len(strata))
    return PImage(star, tuple(per_cone), strata)


# ---------------------------------------------------------------------------
# Ray limits
# ---------------------------------------------------------------------------

def limit_of_ray(space: CompactifiedCone, v0: VecLike, w: VecLike) -> ExtendedPoint:
    """
    Limit of ``v0 + s * w`` as ``s -> inf`` in the compactification.

    The limit lies in the stratum of the face ``tau`` containing ``w`` in its relative
    interior, at the class of ``v0`` in ``N / span(tau)``.

    Raises:
        DomainError:
            If ``v0`` is not in ``sigma``.

        NoStratumError:
            If ``w`` is zero or lies in the relative interior of no stratum's face.
    """
    sigma = space.sigma
    base = as_vec(v0, sigma.dim, 'base point')
    direction = as_vec(w, sigma.dim, 'direction')
    if not sigma.contains(base):
        raise DomainError(f'{format_vec(base)} is not in {sigma}')
    if is_zero(direction):
        raise NoStratumError('the zero direction has no limit stratum')
    for face, _ in space.strata:
        if membership(face.cone, direction) is Membership.RELATIVE_INTERIOR:
            q = quotient_by_span(face.cone)
            return ExtendedPoint(sigma, face, q.apply(base), q)
    raise NoStratumError(f'{format_vec(direction)} lies in the relative interior of no stratum')


def certify_limit(point: ExtendedPoint, v0: VecLike, w: VecLike) -> bool:
    """
    Check ``point`` against the limit of ``<v0 + s * w, u>`` for the generators ``u`` of
    ``sigma^vee``: finite (equal to ``<v0, u>``) when ``<w, u> = 0`` and infinite otherwise.
    """
    base = as_vec(v0, point.sigma.dim, 'base point')
    direction = as_vec(w, point.sigma.dim, 'direction')
    dual = dual_cone(point.sigma)
    for u in dual.rays + dual.lines + tuple(vec_scale(-1, v) for v in dual.lines):
        slope = dot(direction, u)
        expected: AdditiveVal = dot(base, u) if slope == 0 else INFINITY
        if evaluate_extended(point, u) != expected:
            return False
    return True


__all__ = [
    'ExtendedPoint',
    'extend_functional',
    'evaluate_extended',
    'TropSpace',
    'build_trop_space',
    'CompactifiedCone',
    'compactify_cone',
    'PImage',
    'p_image',
    'limit_of_ray',
    'certify_limit',
]
