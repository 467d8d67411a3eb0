"""
Author:
    Inspyre Softworks

Project:
    SphericalTrop

File:
    spherical_trop/registry.py

Description:
    Built-in spherical homogeneous spaces with their colored fans, semi-invariant evaluators
    and group samplers:

    ``torus(n)``
        The torus acting on itself. The valuation cone is everything, there are no colors,
        and the semi-invariants are the coordinates.

    ``sl2_h``
        ``SL2`` modulo its upper unipotent subgroup, i.e. the punctured plane. Rank one, the
        valuation cone is the line, one color ``D = {y = 0}`` with ``rho(D) = 1``, and the six
        embeddings of the classical table.

    ``gl2``
        ``GL2`` as a ``GL2 x GL2`` homogeneous space under left-right multiplication. Rank two,
        coordinates in the figure basis where the valuation cone is ``v1 >= v2`` and the
        color ``D = {x22 = 0}`` maps to ``(-1, 1)``. The semi-invariants are ``x22`` and
        ``det``; the bridge matrix carries their valuations ``(m, d)`` to ``(d - m, m)``.
"""

from __future__ import annotations

import logging
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Final, Mapping, Sequence

from spherical_trop.colored_fan import ColoredCone, ColoredFan, SphericalData
from spherical_trop.config import DEFAULT_ENTRY_RANGE
from spherical_trop.errors import DimensionMismatchError, DomainError, UnknownCharacterError, UnknownEntryError
from spherical_trop.polyhedral import RatCone, RatVec, as_vec, unit_vec
from spherical_trop.puiseux import PuiseuxPoint, PuiseuxSeries

log = logging.getLogger(__name__)

Matrix = tuple[tuple[Fraction, ...], ...]
GroupElement = tuple[Matrix, ...]
Evaluator = Callable[[GroupElement, PuiseuxPoint], PuiseuxSeries]
GroupSampler = Callable[[random.Random, int], GroupElement]

REGISTRY_NAMES: Final[tuple[str, ...]] = ('torus(n)', 'sl2_h', 'gl2')
_TORUS_PATTERN: Final[re.Pattern[str]] = re.compile(r'^torus\((\d+)\)$')


@dataclass(frozen=True, slots=True)
class SemiInvariant:
    """A B-semi-invariant function together with the evaluator of its translates ``(g.f)(x)``."""

    character: str
    evaluate: Evaluator


@dataclass(frozen=True, slots=True)
class RegistryEntry:
    """
    A built-in example.

    Attributes:
        name (str):
            Registry name.

        sd (SphericalData):
            Spherical data in the coordinates used by the fans.

        fans (tuple[tuple[str, ColoredFan], ...]):
            Named colored fans, in display order.

        semiinvariants (tuple[SemiInvariant, ...]):
            Semi-invariants whose valuations are the coordinates before ``basis_bridge``.

        sampler (GroupSampler):
            Draws a group element with rational entries from a seeded generator.

        basis_bridge (tuple[RatVec, ...]):
            Square integer matrix sending semi-invariant valuations to ``sd`` coordinates.

        point_dim (int):
            Number of series coordinates of a point (matrices are row-major).

        identity (GroupElement):
            The identity element, for evaluating semi-invariants untranslated.

        domain (Callable[[PuiseuxPoint], str | None]):
            Returns why a point lies outside the open orbit, or None.

        color_curves (tuple[tuple[str, PuiseuxPoint], ...]):
            For each color, a curve through the color transverse to it; the untranslated
            semi-invariant valuations along it, bridged, give ``rho`` of the color.
    """

    name: str
    sd: SphericalData
    fans: tuple[tuple[str, ColoredFan], ...]
    semiinvariants: tuple[SemiInvariant, ...]
    sampler: GroupSampler
    basis_bridge: tuple[RatVec, ...]
    point_dim: int
    identity: GroupElement
    domain: Callable[[PuiseuxPoint], str | None]
    color_curves: tuple[tuple[str, PuiseuxPoint], ...] = ()

    @property
    def fan_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.fans)

    def fan(self, name: str) -> ColoredFan:
        for fan_name, fan in self.fans:
            if fan_name == name:
                return fan
        raise UnknownEntryError(f'{self.name} has no fan {name!r}; known fans: {list(self.fan_names)}')

    @property
    def characters(self) -> tuple[str, ...]:
        return tuple(s.character for s in self.semiinvariants)

    def bridge(self, values: Sequence[Fraction]) -> RatVec:
        return tuple(sum((a * b for a, b in zip(row, values)), Fraction(0)) for row in self.basis_bridge)

    def check_point(self, x: PuiseuxPoint) -> None:
        """
        Raises:
            DimensionMismatchError:
                If ``x`` has the wrong number of coordinates.

            DomainError:
                If ``x`` is outside the open orbit.
        """
        if x.dim != self.point_dim:
            raise DimensionMismatchError(f'{self.name} point', self.point_dim, x.dim)
        reason = self.domain(x)
        if reason is not None:
            raise DomainError(f'{x} is outside the domain of {self.name}: {reason}')


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------

def _det(m: Matrix) -> Fraction:
    n = len(m)
    if n == 1:
        return m[0][0]
    return sum(
        ((-1) ** j * m[0][j] * _det(tuple(row[:j] + row[j + 1:] for row in m[1:])) for j in range(n)),
        Fraction(0),
    )


def _identity(n: int) -> Matrix:
    return tuple(unit_vec(n, i) for i in range(n))


def random_invertible(rng: random.Random, n: int, entry_range: int = DEFAULT_ENTRY_RANGE) -> Matrix:
    """Integer matrix with entries in ``[-entry_range, entry_range]``, redrawn until invertible."""
    while True:
        m = tuple(
            tuple(Fraction(rng.randint(-entry_range, entry_range)) for _ in range(n))
            for _ in range(n)
        )
        if _det(m) != 0:
            return m


def _sample_torus(n: int) -> GroupSampler:
    def sample(rng: random.Random, entry_range: int) -> GroupElement:
        entries = []
        for _ in range(n):
            t = 0
            while t == 0:
                t = rng.randint(-entry_range, entry_range)
            entries.append(Fraction(t))
        return (tuple(tuple(entries[i] if i == j else Fraction(0) for j in range(n)) for i in range(n)),)

    return sample


def _sample_sl2(rng: random.Random, entry_range: int) -> GroupElement:
    m = random_invertible(rng, 2, entry_range)
    d = _det(m)
    return ((tuple(x / d for x in m[0]), m[1]),)


def _sample_gl2_pair(rng: random.Random, entry_range: int) -> GroupElement:
    return random_invertible(rng, 2, entry_range), random_invertible(rng, 2, entry_range)


# ---------------------------------------------------------------------------
# Evaluators
# ---------------------------------------------------------------------------

def _torus_coordinate(i: int) -> Evaluator:
    def evaluate(g: GroupElement, x: PuiseuxPoint) -> PuiseuxSeries:
        return g[0][i][i] * x.coords[i]

    return evaluate


def _sl2_y(g: GroupElement, x: PuiseuxPoint) -> PuiseuxSeries:
    (m,) = g
    a, c = x.coords
    return m[1][0] * a + m[1][1] * c


def _gl2_x22(g: GroupElement, x: PuiseuxPoint) -> PuiseuxSeries:
    left, right = g
    xm = x.matrix(2)
    total = PuiseuxSeries()
    for j in range(2):
        for k in range(2):
            total = total + left[1][j] * right[k][1] * xm[j][k]
    return total


def _gl2_det(g: GroupElement, x: PuiseuxPoint) -> PuiseuxSeries:
    left, right = g
    xm = x.matrix(2)
    return _det(left) * _det(right) * (xm[0][0] * xm[1][1] - xm[0][1] * xm[1][0])


def _torus_domain(x: PuiseuxPoint) -> str | None:
    return None if x.is_torus_point else 'a coordinate is zero'


def _sl2_domain(x: PuiseuxPoint) -> str | None:
    return None if any(not c.is_zero for c in x.coords) else 'the origin is not in the punctured plane'


def _gl2_domain(x: PuiseuxPoint) -> str | None:
    xm = x.matrix(2)
    det = xm[0][0] * xm[1][1] - xm[0][1] * xm[1][0]
    return None if not det.is_zero else 'the matrix is singular'


# ---------------------------------------------------------------------------
# Entries
# ---------------------------------------------------------------------------

def _torus(n: int) -> RegistryEntry:
    if n < 1:
        raise UnknownEntryError(f'torus rank must be >= 1, got {n}')
    sd = SphericalData(n, RatCone.whole(n), (), tuple(f'x{i + 1}' for i in range(n)))
    basis = [unit_vec(n, i) for i in range(n)]
    orthant = ColoredCone(RatCone.from_rays(n, basis))
    spanning = basis + [tuple(Fraction(-1) for _ in range(n))]
    projective = [ColoredCone(RatCone.from_rays(n, rays)) for rays in combinations(spanning, n)]
    fans = (
        (f'A{n}', ColoredFan.generated_by(sd, [orthant])),
        (f'P{n}', ColoredFan.generated_by(sd, projective)),
    )
    return RegistryEntry(
        name=f'torus({n})',
        sd=sd,
        fans=fans,
        semiinvariants=tuple(SemiInvariant(f'x{i + 1}', _torus_coordinate(i)) for i in range(n)),
        sampler=_sample_torus(n),
        basis_bridge=tuple(basis),
        point_dim=n,
        identity=(_identity(n),),
        domain=_torus_domain,
    )


def _sl2_h() -> RegistryEntry:
    sd = SphericalData.create(1, (), {'D': (1,)}, ('y',))
    plus, minus = RatCone.ray(1), RatCone.ray(-1)
    tables: list[tuple[str, list[ColoredCone]]] = [
        ('A2_minus_O', [ColoredCone(RatCone.zero(1))]),
        ('Bl_O_A2', [ColoredCone(plus)]),
        ('P2_minus_O', [ColoredCone(minus)]),
        ('Bl_O_P2', [ColoredCone(plus), ColoredCone(minus)]),
        ('A2', [ColoredCone(plus, frozenset({'D'}))]),
        ('P2', [ColoredCone(plus, frozenset({'D'})), ColoredCone(minus)]),
    ]
    return RegistryEntry(
        name='sl2_h',
        sd=sd,
        fans=tuple((name, ColoredFan.generated_by(sd, cones)) for name, cones in tables),
        semiinvariants=(SemiInvariant('y', _sl2_y),),
        sampler=_sample_sl2,
        basis_bridge=((Fraction(1),),),
        point_dim=2,
        identity=(_identity(2),),
        domain=_sl2_domain,
        color_curves=(('D', PuiseuxPoint.of(1, 'u')),),
    )


GL2_BRIDGE: Final[tuple[RatVec, ...]] = (as_vec((-1, 1)), as_vec((1, 0)))


def _gl2() -> RegistryEntry:
    sd = SphericalData.create(2, [(1, -1)], {'D': (-1, 1)}, ('v1', 'v2'))
    x_cone = ColoredCone(RatCone.from_rays(2, [(-1, 1), (1, 0)]), frozenset({'D'}))
    x_prime = ColoredCone(RatCone.ray(1, 0))
    return RegistryEntry(
        name='gl2',
        sd=sd,
        fans=(
            ('X', ColoredFan.generated_by(sd, [x_cone])),
            ('X_prime', ColoredFan.generated_by(sd, [x_prime])),
        ),
        semiinvariants=(SemiInvariant('x22', _gl2_x22), SemiInvariant('det', _gl2_det)),
        sampler=_sample_gl2_pair,
        basis_bridge=GL2_BRIDGE,
        point_dim=4,
        identity=(_identity(2), _identity(2)),
        domain=_gl2_domain,
        color_curves=(('D', PuiseuxPoint.of(0, 1, 1, 'u')),),
    )


@lru_cache(maxsize=32)
def registry_get(name: str) -> RegistryEntry:
    """
    Look up a built-in example by name.

    Parameters:
        name (str):
            ``'torus(n)'`` for a positive integer ``n``, ``'sl2_h'`` or ``'gl2'``.

    Returns:
        RegistryEntry:
            The entry; entries are immutable and cached.

    Raises:
        UnknownEntryError:
            If ``name`` matches no entry.
    """
    key = name.strip()
    match = _TORUS_PATTERN.match(key)
    if match:
        return _torus(int(match.group(1)))
    if key == 'sl2_h':
        return _sl2_h()
    if key == 'gl2':
        return _gl2()
    raise UnknownEntryError(f'unknown registry entry {name!r}; expected one of {list(REGISTRY_NAMES)}')


def semiinvariant_eval(
        entry: RegistryEntry,
        character: str | Mapping[str, int],
        g: GroupElement,
        x: PuiseuxPoint,
) -> PuiseuxSeries:
    """
    Evaluate the ``g``-translate of a semi-invariant at ``x``.

    Parameters:
        character (str | Mapping[str, int]):
            A character name, or a mapping of names to exponents for a product of
            semi-invariants.

    Raises:
        UnknownCharacterError:
            If a character is not one of ``entry.characters``.

        DomainError:
            If ``x`` is outside the open orbit.
    """
    weights = {character: 1} if isinstance(character, str) else dict(character)
    by_name = {s.character: s for s in entry.semiinvariants}
    for name in weights:
        if name not in by_name:
            raise UnknownCharacterError(f'{entry.name} has no semi-invariant {name!r}; known: {list(entry.characters)}')
    entry.check_point(x)
    result = PuiseuxSeries.constant(1)
    for name, power in weights.items():
        result = result * by_name[name].evaluate(g, x) ** power
    return result


def color_rho_from_curve(entry: RegistryEntry, color: str) -> RatVec:
    """``rho`` of a color, recomputed from the vanishing orders along its transverse curve."""
    for name, curve in entry.color_curves:
        if name == color:
            values = [s.evaluate(entry.identity, curve).val() for s in entry.semiinvariants]
            return entry.bridge(values)
    raise UnknownEntryError(f'{entry.name} has no curve for color {color!r}')


__all__ = [
    'REGISTRY_NAMES',
    'GL2_BRIDGE',
    'GroupElement',
    'SemiInvariant',
    'RegistryEntry',
    'random_invertible',
    'registry_get',
    'semiinvariant_eval',
    'color_rho_from_curve',
]
