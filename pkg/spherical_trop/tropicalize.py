"""
Author:
    Inspyre Softworks

Project:
    SphericalTrop

File:
    spherical_trop/tropicalize.py

Description:
    Tropicalization of points over Puiseux series and the retraction seminorm families.

    * :func:`trp_torus` and :func:`trp_toric_extended` for tori and toric varieties.
    * :func:`trp_generic` for the registry's spherical spaces: each coordinate is the least
      valuation of a semi-invariant over sampled translates ``g.f``.
    * :func:`retraction_value` for the monomial family and the homotopy family, indexed by
      ``mu = -log(lambda)`` in ``[0, inf]``.
"""

from __future__ import annotations

import enum
import logging
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from spherical_trop.colored_fan import ColoredCone, ColoredFan
from spherical_trop.compactify import ExtendedPoint
from spherical_trop.config import DEFAULT_ENTRY_RANGE, DEFAULT_SAMPLES, DEFAULT_SEED
from spherical_trop.errors import (
    DimensionMismatchError,
    DomainError,
    SamplingInstabilityError,
    ZeroCoordinateError,
)
from spherical_trop.polyhedral import RatCone, RatVec, format_vec, quotient_by_span, vec_add, vec_scale, zero_vec
from spherical_trop.puiseux import (
    INFINITY,
    AdditiveVal,
    Infinity,
    LaurentPolynomial,
    PuiseuxPoint,
    PuiseuxSeries,
    val_min,
)
from spherical_trop.registry import GroupElement, RegistryEntry

log = logging.getLogger(__name__)

Mu = Fraction | Infinity


def trp_torus(x: PuiseuxPoint) -> RatVec:
    """
    Coordinatewise valuation of a torus point.

    Raises:
        ZeroCoordinateError:
            If a coordinate is zero; such points lie on boundary strata, see
            :func:`trp_toric_extended`.
    """
    values = x.valuations()
    if any(v is INFINITY for v in values):
        raise ZeroCoordinateError(f'{x} has a zero coordinate')
    return tuple(values)  # type: ignore[arg-type]


def default_chart(fan: ColoredFan) -> RatCone:
    """
    The chart used when none is given: the fan's only maximal cone.

    Raises:
        DomainError:
            If the fan has more than one maximal cone.
    """
    maximal = fan.maximal_cones()
    if len(maximal) != 1:
        raise DomainError(f'the fan has {len(maximal)} maximal cones; choose a chart')
    return maximal[0].cone


def chart_rays(chart: RatCone) -> tuple[RatVec, ...]:
    """Rays of a smooth chart in coordinate order (reverse lexicographic, so the orthant gives e1, e2, ...)."""
    return tuple(sorted(chart.rays, reverse=True))


def trp_toric_extended(fan: ColoredFan, x: PuiseuxPoint, chart: RatCone | None = None) -> ExtendedPoint:
    """
    Tropicalize a point of a toric variety given in the coordinates of an affine chart.

    ``chart`` is a smooth full-dimensional cone of ``fan`` with rays ``r_1..r_n`` taken in
    :func:`chart_rays` order; the point's j-th coordinate is the character dual to ``r_j``.
    The zero coordinates select ``tau = cone(r_j : x_j = 0)`` and the functional is the
    class of ``sum(val(x_j) * r_j)`` over the nonzero coordinates in ``N / span(tau)``.

    Raises:
        DomainError:
            If the chart is not a smooth full-dimensional cone of the fan, or the zero pattern
            selects a cone that is not in the fan.
    """
    sigma = chart if chart is not None else default_chart(fan)
    n = sigma.dim
    if x.dim != n:
        raise DimensionMismatchError('chart point', n, x.dim)
    if not sigma.is_smooth or sigma.linear_dim != n:
        raise DomainError(f'{sigma} is not a smooth full-dimensional chart')
    if ColoredCone(sigma) not in fan:
        raise DomainError(f'chart {sigma} is not a cone of the fan')
    rays = chart_rays(sigma)
    zero_rays = [r for r, z in zip(rays, x.zero_pattern) if z]
    tau = RatCone.from_rays(n, zero_rays)
    stratum = ColoredCone(tau)
    if stratum not in fan:
        raise DomainError(f'zero pattern of {x} selects {tau}, which is not a cone of the fan')
    lifted = zero_vec(n)
    for r, coord in zip(rays, x.coords):
        if not coord.is_zero:
            lifted = vec_add(lifted, vec_scale(coord.val(), r))
    q = quotient_by_span(tau)
    return ExtendedPoint(sigma, stratum, q.apply(lifted), q)


def sample_group(entry: RegistryEntry, samples: int, seed: int, entry_range: int) -> list[GroupElement]:
    rng = random.Random(seed)
    return [entry.sampler(rng, entry_range) for _ in range(samples)]


def _generic_valuations(entry: RegistryEntry, x: PuiseuxPoint, elements: Sequence[GroupElement]) -> list[Fraction]:
    values = []
    for semi in entry.semiinvariants:
        best = val_min(semi.evaluate(g, x).val() for g in elements)
        if best is INFINITY:
            raise DomainError(f'{semi.character} vanishes on every sampled translate at {x}')
        values.append(best)
    return values


def trp_generic(
        entry: RegistryEntry,
        x: PuiseuxPoint,
        samples: int = DEFAULT_SAMPLES,
        seed: int = DEFAULT_SEED,
        entry_range: int = DEFAULT_ENTRY_RANGE,
        check_stability: bool = True,
) -> RatVec:
    """
    Tropicalize ``x`` through generic translates of the semi-invariants.

    Each semi-invariant contributes the least valuation of ``(g.f)(x)`` over ``samples``
    seeded group elements; the bridge matrix then maps these into ``N_Q``.

    Parameters:
        check_stability (bool):
            Recompute with twice as many samples and fail if the answer moves. On by
            default; when turned off the single-size answer is logged as unchecked.

    Raises:
        DomainError:
            If ``x`` is outside the open orbit.

        SamplingInstabilityError:
            If ``check_stability`` is set and the two sample sizes disagree.
    """
    if samples < 1:
        raise ValueError(f'samples must be >= 1, got {samples}')
    entry.check_point(x)
    elements = sample_group(entry, samples, seed, entry_range)
    values = _generic_valuations(entry, x, elements)
    result = entry.bridge(values)
    if check_stability:
        doubled = entry.bridge(_generic_valuations(entry, x, sample_group(entry, 2 * samples, seed, entry_range)))
        if doubled != result:
            log.warning('sampling unstable at %s: %s with %d samples, %s with %d',
                        x, format_vec(result), samples, format_vec(doubled), 2 * samples)
            raise SamplingInstabilityError(
                f'{entry.name} at {x}: {format_vec(result)} with {samples} samples, '
                f'{format_vec(doubled)} with {2 * samples}'
            )
    else:
        log.warning('stability check skipped for %s at %s', entry.name, x)
    log.debug('trp_generic %s at %s -> %s', entry.name, x, format_vec(result))
    return result


# ---------------------------------------------------------------------------
# Seminorm families
# ---------------------------------------------------------------------------

class Family(enum.Enum):
    MONOMIAL = 'monomial'
    HOMOTOPY = 'homotopy'


def parse_mu(text: str | int | Fraction | Infinity) -> Mu:
    """Read ``mu`` from ``'inf'`` or a non-negative rational such as ``'3/2'``."""
    if isinstance(text, Infinity):
        return text
    if isinstance(text, str) and text.strip().lower() in ('inf', 'infinity', '+inf', 'oo'):
        return INFINITY
    try:
        mu = Fraction(text)
    except (TypeError, ValueError):
        raise ValueError(f'mu must be a non-negative rational or inf, got {text!r}') from None
    if mu < 0:
        raise ValueError(f'mu must be >= 0, got {mu}')
    return mu


@dataclass(frozen=True, slots=True)
class SeminormSample:
    """
    A member of a seminorm family at a point.

    ``mu = 0`` is ``lambda = 1`` and ``mu = INFINITY`` is ``lambda = 0``.
    """

    mu: Mu
    point: PuiseuxPoint
    family: Family = Family.MONOMIAL

    def __post_init__(self) -> None:
        if not isinstance(self.mu, Infinity) and self.mu < 0:
            raise ValueError(f'mu must be >= 0, got {self.mu}')


Piece = tuple[AdditiveVal, int]


def _monomial_pieces(f: LaurentPolynomial, x: PuiseuxPoint) -> list[Piece]:
    if not x.is_torus_point:
        raise ZeroCoordinateError(f'the monomial family needs a torus point, got {x}')
    values = trp_torus(x)
    return [
        (sum((e * v for e, v in zip(exps, values)), Fraction(0)), sum(exps))
        for exps, _ in f.terms
    ]


def _homotopy_pieces(f: LaurentPolynomial, x: PuiseuxPoint) -> list[Piece]:
    shift, poly = f.shifted()
    correction = Fraction(0)
    for s, coord in zip(shift, x.coords):
        if s:
            if coord.is_zero:
                raise DomainError(f'{f} has a pole at {x}')
            correction += s * coord.val()
    coefficients: dict[tuple[int, ...], PuiseuxSeries] = {}
    for exps, a in poly.terms:
        monomial = PuiseuxSeries.constant(a)
        for coord, e in zip(x.coords, exps):
            monomial = monomial * coord ** e
        if monomial.is_zero:
            continue
        for sub in product(*(range(e + 1) for e in exps)):
            weight = math.prod(math.comb(e, j) for e, j in zip(exps, sub))
            coefficients[sub] = coefficients.get(sub, PuiseuxSeries()) + weight * monomial
    return [
        (c.val() - correction, sum(j))
        for j, c in sorted(coefficients.items())
        if not c.is_zero
    ]


def retraction_breakpoints(f: LaurentPolynomial, x: PuiseuxPoint, family: Family) -> tuple[Piece, ...]:
    """
    Affine pieces ``(intercept, slope)`` whose lower envelope is ``mu -> retraction_value``.

    Monomial family: one piece per term, ``(<I, val x>, |I|)``. Homotopy family: one piece per
    nonzero coefficient ``c_J`` of ``f(t x)`` in powers of ``(t - 1)``, ``(val c_J, |J|)``;
    these slopes are never negative.
    """
    if x.dim != f.nvars:
        raise DimensionMismatchError('point', f.nvars, x.dim)
    pieces = _monomial_pieces(f, x) if family is Family.MONOMIAL else _homotopy_pieces(f, x)
    return tuple(sorted(set(pieces), key=lambda p: (p[1], p[0])))


def _envelope(pieces: Sequence[Piece], mu: Mu) -> AdditiveVal:
    if isinstance(mu, Infinity):
        if any(slope < 0 for _, slope in pieces):
            raise DomainError('a term of negative total degree is unbounded at mu = inf')
        return val_min(value for value, slope in pieces if slope == 0)
    return val_min(value + mu * slope for value, slope in pieces)


def retraction_value(s: SeminormSample, f: LaurentPolynomial) -> AdditiveVal:
    """
    Additive value of ``f`` under the seminorm ``s``.

    * monomial: ``min_I (val(a_I x^I) + mu * |I|)`` over the terms of ``f``;
    * homotopy: ``min_J (val(c_J(x)) + mu * |J|)`` where ``f(t x) = sum_J c_J(x) (t - 1)^J``.

    Laurent polynomials are handled in the homotopy family by clearing denominators with a
    monomial ``t^R`` and subtracting ``<R, val x>``.

    Raises:
        ZeroCoordinateError:
            For the monomial family at a point with a zero coordinate.
    """
    return _envelope(retraction_breakpoints(f, s.point, s.family), s.mu)


@dataclass(frozen=True, slots=True)
class MonomialValuation:
    """
    The seminorm ``f -> min_I <I, weights>`` on Laurent polynomials, i.e. the monomial family at
    ``mu = 0`` described by its value vector.
    """

    weights: RatVec

    def value(self, f: LaurentPolynomial) -> AdditiveVal:
        if f.nvars != len(self.weights):
            raise DimensionMismatchError('Laurent polynomial', len(self.weights), f.nvars)
        return val_min(sum((e * w for e, w in zip(exps, self.weights)), Fraction(0)) for exps, _ in f.terms)

    def as_point(self) -> PuiseuxPoint:
        """A point whose retraction is this valuation: ``(u^w1, ..., u^wn)``."""
        return PuiseuxPoint(tuple(PuiseuxSeries.monomial(1, w) for w in self.weights))

    def __str__(self) -> str:
        return format_vec(self.weights)


def retract_point(x: PuiseuxPoint | MonomialValuation) -> MonomialValuation:
    """
    Retraction of a torus point onto the skeleton, as a value vector; idempotent.

    Raises:
        ZeroCoordinateError:
            If a coordinate of ``x`` is zero.
    """
    if isinstance(x, MonomialValuation):
        return x
    return MonomialValuation(trp_torus(x))


__all__ = [
    'trp_torus',
    'default_chart',
    'chart_rays',
    'trp_toric_extended',
    'sample_group',
    'trp_generic',
    'Family',
    'parse_mu',
    'SeminormSample',
    'retraction_breakpoints',
    'retraction_value',
    'MonomialValuation',
    'retract_point',
]
