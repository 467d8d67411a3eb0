"""
Author:
    Inspyre Softworks

Project:
    SphericalTrop

File:
    spherical_trop/polyhedral.py

Description:
    Exact rational polyhedral cones.

    A :class:`RatCone` always carries both of its descriptions: minimal generators (rays plus
    a basis of the lineality space) and minimal inequalities (facet normals plus a basis of
    the implicit equations). Both sides are stored in a canonical form, so two cones are equal
    as sets exactly when they compare equal, and taking the dual is a swap of the two sides.

    Conversion between the descriptions is a double description pass over exact fractions;
    sympy supplies the linear algebra around it (null spaces, reduced echelon forms, inverses).
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import sympy

from spherical_trop.errors import DimensionMismatchError, DomainError

log = logging.getLogger(__name__)

RatVec = tuple[Fraction, ...]
"""An exact rational vector. Floats are never accepted."""

VecLike = Sequence[int | Fraction | str]


# ---------------------------------------------------------------------------
# Vector helpers
# ---------------------------------------------------------------------------

def as_vec(values: Iterable[int | Fraction | str], dim: int | None = None, what: str = 'vector') -> RatVec:
    """
    Coerce ``values`` into a :data:`RatVec`.

    Parameters:
        values (Iterable[int | Fraction | str]):
            Entries; strings such as ``'3/4'`` are accepted.

        dim (int | None):
            Expected length, or None to skip the check.

        what (str):
            Name used in error messages.

    Returns:
        RatVec:
            The exact vector.

    Raises:
        TypeError:
            If an entry is a float (or another non-rational type).

        DimensionMismatchError:
            If ``dim`` is given and the length differs.
    """
    out = []
    for value in values:
        if isinstance(value, (bool, float)) or not isinstance(value, (int, Fraction, str)):
            raise TypeError(f'{what} entries must be int, Fraction or str, got {type(value).__name__}')
        out.append(Fraction(value))
    vec = tuple(out)
    if dim is not None and len(vec) != dim:
        raise DimensionMismatchError(what, dim, len(vec))
    return vec


def dot(a: RatVec, b: RatVec) -> Fraction:
    """Exact inner product."""
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def vec_add(a: RatVec, b: RatVec) -> RatVec:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: RatVec, b: RatVec) -> RatVec:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(c: Fraction | int, a: RatVec) -> RatVec:
    return tuple(c * x for x in a)


def zero_vec(dim: int) -> RatVec:
    return (Fraction(0),) * dim


def unit_vec(dim: int, i: int) -> RatVec:
    return tuple(Fraction(1 if j == i else 0) for j in range(dim))


def is_zero(v: RatVec) -> bool:
    return all(x == 0 for x in v)


def primitive(v: RatVec) -> RatVec:
    """
    Scale a nonzero vector to the primitive integer vector on the same ray.

    The zero vector is returned unchanged.
    """
    if is_zero(v):
        return v
    den = math.lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints)
    return tuple(Fraction(n // g) for n in ints)


def format_vec(v: RatVec) -> str:
    return '(' + ', '.join(str(x) for x in v) + ')'


# ---------------------------------------------------------------------------
# sympy bridge
# ---------------------------------------------------------------------------

def _to_sympy(rows: Sequence[RatVec], ncols: int) -> sympy.Matrix:
    flat = [sympy.Rational(x.numerator, x.denominator) for row in rows for x in row]
    return sympy.Matrix(len(rows), ncols, flat)


def _to_fraction(x: sympy.Expr) -> Fraction:
    q = sympy.Rational(x)
    return Fraction(int(q.p), int(q.q))


def _from_sympy(m: sympy.Matrix) -> list[RatVec]:
    return [tuple(_to_fraction(m[i, j]) for j in range(m.cols)) for i in range(m.rows)]


def _null_basis(rows: Sequence[RatVec], ncols: int) -> list[RatVec]:
    if ncols == 0:
        return []
    if not rows:
        return [unit_vec(ncols, i) for i in range(ncols)]
    return [tuple(_to_fraction(x) for x in v) for v in _to_sympy(rows, ncols).nullspace()]


def _rref(rows: Sequence[RatVec], ncols: int) -> tuple[list[RatVec], tuple[int, ...]]:
    if not rows or ncols == 0:
        return [], ()
    reduced, pivots = _to_sympy(rows, ncols).rref()
    return _from_sympy(reduced)[:len(pivots)], tuple(pivots)


def rank(rows: Sequence[RatVec], ncols: int) -> int:
    return len(_rref(rows, ncols)[1])


def canonical_basis(vectors: Sequence[RatVec], dim: int) -> tuple[RatVec, ...]:
    """Reduced echelon basis of the span of ``vectors``, each row made primitive."""
    reduced, _ = _rref(list(vectors), dim)
    return tuple(primitive(row) for row in reduced)


# ---------------------------------------------------------------------------
# Double description
# ---------------------------------------------------------------------------

def _double_description(rows: Sequence[RatVec], r: int) -> list[RatVec]:
    """
    Extreme rays of ``{z in Q^r : z >= 0, <c, z> >= 0 for c in rows}``.

    Constraints are added one at a time to the orthant; a pair of rays on opposite sides of
    the new hyperplane yields a new ray only when the pair is adjacent (combinatorial test).
    """
    rays: list[tuple[RatVec, frozenset[int]]] = [
        (unit_vec(r, i), frozenset(j for j in range(r) if j != i)) for i in range(r)
    ]
    for step, c in enumerate(rows):
        idx = r + step
        values = [dot(c, vec) for vec, _ in rays]
        pos = [ray for ray, val in zip(rays, values) if val > 0]
        neg = [ray for ray, val in zip(rays, values) if val < 0]
        zero = [(vec, zs | {idx}) for (vec, zs), val in zip(rays, values) if val == 0]
        if not neg:
            rays = pos + zero
            continue
        created: dict[RatVec, frozenset[int]] = {}
        for p_vec, p_zero in pos:
            vp = dot(c, p_vec)
            for n_vec, n_zero in neg:
                common = p_zero & n_zero
                if len(common) < r - 2:
                    continue
                if any(
                    common <= other_zero
                    for other_vec, other_zero in rays
                    if other_vec != p_vec and other_vec != n_vec
                ):
                    continue
                vn = dot(c, n_vec)
                vec = primitive(vec_sub(vec_scale(vp, n_vec), vec_scale(vn, p_vec)))
                created[vec] = common | {idx}
        rays = pos + zero + sorted(created.items())
        log.debug('double description step %d: %d rays', step, len(rays))
    return [vec for vec, _ in rays]


def _minimal_generators(
        ineqs: Sequence[RatVec],
        eqs: Sequence[RatVec],
        dim: int,
) -> tuple[tuple[RatVec, ...], tuple[RatVec, ...]]:
    """
    Canonical generators of ``{x : <a, x> >= 0 for a in ineqs, <e, x> = 0 for e in eqs}``.

    Returns:
        tuple[tuple[RatVec, ...], tuple[RatVec, ...]]:
            ``(rays, lines)``: rays are primitive, orthogonal to the lineality space, sorted
            and irredundant; lines are the canonical basis of the lineality space.
    """
    if dim == 0:
        return (), ()
    basis = _null_basis([e for e in eqs if not is_zero(e)], dim)
    s = len(basis)
    if s == 0:
        return (), ()
    reduced = [tuple(dot(a, b) for b in basis) for a in ineqs]
    reduced = [a for a in reduced if not is_zero(a)]

    lineality_coords = _null_basis(reduced, s)
    lines_x = [
        tuple(sum((n[j] * basis[j][k] for j in range(s)), Fraction(0)) for k in range(dim))
        for n in lineality_coords
    ]
    lines = canonical_basis(lines_x, dim)

    if not reduced:
        return (), lines

    transposed = [tuple(row[j] for row in reduced) for j in range(s)]
    _, pivots = _rref(transposed, len(reduced))
    k_rows = [reduced[i] for i in pivots]
    r = len(k_rows)
    k = _to_sympy(k_rows, s)
    gram_inv = (k * k.T).inv()

    # z = K y identifies the pointed part with a cone inside the orthant of Q^r
    coeff = gram_inv * k
    others = [
        tuple(_to_fraction(x) for x in (_to_sympy([a], s) * coeff.T))
        for i, a in enumerate(reduced) if i not in pivots
    ]
    z_rays = _double_description(others, r)

    back = _to_sympy(basis, dim).T * k.T * gram_inv
    if lines:
        lm = _to_sympy(lines, dim)
        back = (sympy.eye(dim) - lm.T * (lm * lm.T).inv() * lm) * back
    back_rows = _from_sympy(back)

    rays = {
        primitive(tuple(dot(row, z) for row in back_rows))
        for z in z_rays
    }
    rays.discard(zero_vec(dim))
    return tuple(sorted(rays)), lines


# ---------------------------------------------------------------------------
# Cones
# ---------------------------------------------------------------------------

class Membership(enum.Enum):
    """Position of a vector relative to a cone."""

    OUTSIDE = 'outside'
    BOUNDARY = 'boundary'
    RELATIVE_INTERIOR = 'relative_interior'


@dataclass(frozen=True, slots=True)
class RatCone:
    """
    Closed rational polyhedral cone in ``Q^dim`` with both descriptions.

    Use the ``from_*`` constructors; they canonicalize. The set is
    ``cone(rays) + span(lines)``, equivalently
    ``{v : <u, v> >= 0 for u in halfspaces, <e, v> = 0 for e in equations}``.
    """

    dim: int
    rays: tuple[RatVec, ...]
    lines: tuple[RatVec, ...] = ()
    halfspaces: tuple[RatVec, ...] = ()
    equations: tuple[RatVec, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.dim, int) or self.dim < 0:
            raise ValueError(f'dim must be a non-negative int, got {self.dim!r}')
        for name in ('rays', 'lines', 'halfspaces', 'equations'):
            for v in getattr(self, name):
                if len(v) != self.dim:
                    raise DimensionMismatchError(f'cone {name}', self.dim, len(v))

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rays(cls, dim: int, rays: Iterable[VecLike], lines: Iterable[VecLike] = ()) -> RatCone:
        """
        Cone generated by ``rays`` plus the linear span of ``lines``.

        Raises:
            DimensionMismatchError:
                If a vector does not have length ``dim``.
        """
        ray_vecs = [as_vec(v, dim, 'ray') for v in rays]
        line_vecs = [as_vec(v, dim, 'line') for v in lines]
        halfspaces, equations = _minimal_generators(ray_vecs, line_vecs, dim)
        canon_rays, canon_lines = _minimal_generators(halfspaces, equations, dim)
        return cls(dim, canon_rays, canon_lines, halfspaces, equations)

    @classmethod
    def from_halfspaces(
            cls,
            dim: int,
            halfspaces: Iterable[VecLike],
            equations: Iterable[VecLike] = (),
    ) -> RatCone:
        """Cone cut out by ``<u, v> >= 0`` for each halfspace and ``<e, v> = 0`` for each equation."""
        hs = [as_vec(v, dim, 'halfspace') for v in halfspaces]
        eqs = [as_vec(v, dim, 'equation') for v in equations]
        rays, lines = _minimal_generators(hs, eqs, dim)
        canon_hs, canon_eqs = _minimal_generators(rays, lines, dim)
        return cls(dim, rays, lines, canon_hs, canon_eqs)

    @classmethod
    def zero(cls, dim: int) -> RatCone:
        return cls.from_rays(dim, ())

    @classmethod
    def whole(cls, dim: int) -> RatCone:
        return cls.from_rays(dim, (), [unit_vec(dim, i) for i in range(dim)])

    @classmethod
    def ray(cls, *coords: int | Fraction | str) -> RatCone:
        return cls.from_rays(len(coords), [coords])

    # -- predicates and derived data ----------------------------------------

    @property
    def generators(self) -> tuple[RatVec, ...]:
        """Rays, lines and negated lines; their conical hull is the cone."""
        return self.rays + self.lines + tuple(vec_scale(-1, v) for v in self.lines)

    @property
    def linear_dim(self) -> int:
        """Dimension of the linear span."""
        return self.dim - len(self.equations)

    @property
    def is_strictly_convex(self) -> bool:
        return not self.lines

    @property
    def is_zero(self) -> bool:
        return not self.rays and not self.lines

    @property
    def is_smooth(self) -> bool:
        """Strictly convex, simplicial and unimodular on its span."""
        if not self.is_strictly_convex or len(self.rays) != self.linear_dim:
            return False
        if not self.rays:
            return True
        m = _to_sympy(self.rays, self.dim)
        minors = [int(m.extract(list(range(m.rows)), list(cols)).det()) for cols in combinations(range(self.dim), m.rows)]
        return math.gcd(*minors) == 1

    def relative_interior_point(self) -> RatVec:
        """A point of the relative interior (the sum of the rays)."""
        point = zero_vec(self.dim)
        for r in self.rays:
            point = vec_add(point, r)
        return point

    def contains(self, v: RatVec) -> bool:
        if len(v) != self.dim:
            raise DimensionMismatchError('vector', self.dim, len(v))
        return all(dot(u, v) >= 0 for u in self.halfspaces) and all(dot(e, v) == 0 for e in self.equations)

    def contains_cone(self, other: RatCone) -> bool:
        if other.dim != self.dim:
            raise DimensionMismatchError('cone', self.dim, other.dim)
        return all(self.contains(g) for g in other.generators)

    def is_consistent(self) -> bool:
        """Cross-check that generators satisfy every inequality (and lines every equation)."""
        for g in self.rays:
            if any(dot(u, g) < 0 for u in self.halfspaces) or any(dot(e, g) != 0 for e in self.equations):
                return False
        for line in self.lines:
            if any(dot(u, line) != 0 for u in self.halfspaces) or any(dot(e, line) != 0 for e in self.equations):
                return False
        return True

    def __str__(self) -> str:
        if self.is_zero:
            return '{0}'
        text = 'cone{' + ', '.join(format_vec(r) for r in self.rays)
        if self.lines:
            text += ('; ' if self.rays else '') + 'lines ' + ', '.join(format_vec(v) for v in self.lines)
        return text + '}'


def _check_dims(a: RatCone, b: RatCone) -> None:
    if a.dim != b.dim:
        raise DimensionMismatchError('cone', a.dim, b.dim)


def dual_cone(c: RatCone) -> RatCone:
    """
    Dual cone ``{u : <u, v> >= 0 for all v in c}``.

    Both descriptions are kept canonically, so this is an exchange of the two sides and is
    exactly involutive.
    """
    return RatCone(c.dim, c.halfspaces, c.equations, c.rays, c.lines)


@lru_cache(maxsize=4096)
def face_lattice(c: RatCone) -> tuple[RatCone, ...]:
    """
    All faces of ``c``, from the lineality space up to ``c`` itself.

    Faces are enumerated as intersections of facets and keyed by the rays they contain. The
    result is sorted by dimension, then by rays.
    """
    facets_tight = [frozenset(i for i, r in enumerate(c.rays) if dot(u, r) == 0) for u in c.halfspaces]
    seen: set[frozenset[int]] = set()
    frontier = [frozenset(range(len(c.rays)))]
    while frontier:
        current = frontier.pop()
        if current in seen:
            continue
        seen.add(current)
        frontier.extend(current & tight for tight in facets_tight)
    faces = [RatCone.from_rays(c.dim, [c.rays[i] for i in sorted(key)], c.lines) for key in seen]
    return tuple(sorted(faces, key=lambda f: (f.linear_dim, f.rays)))


def is_face(face: RatCone, c: RatCone) -> bool:
    _check_dims(face, c)
    return face in face_lattice(c)


def proper_faces(c: RatCone) -> tuple[RatCone, ...]:
    return tuple(f for f in face_lattice(c) if f != c)


def membership(c: RatCone, v: VecLike) -> Membership:
    """
    Classify ``v`` as outside ``c``, on its relative boundary, or in its relative interior.

    Raises:
        DimensionMismatchError:
            If ``v`` does not live in the ambient space of ``c``.
    """
    vec = as_vec(v, c.dim, 'vector')
    if not c.contains(vec):
        return Membership.OUTSIDE
    if any(dot(u, vec) == 0 for u in c.halfspaces):
        return Membership.BOUNDARY
    return Membership.RELATIVE_INTERIOR


def intersect(a: RatCone, b: RatCone) -> RatCone:
    _check_dims(a, b)
    return RatCone.from_halfspaces(a.dim, a.halfspaces + b.halfspaces, a.equations + b.equations)


def relative_interior_meets(a: RatCone, b: RatCone) -> bool:
    """
    Whether the relative interior of ``a`` meets ``b``.

    This holds exactly when a relative interior point of ``a`` and ``b`` together lies in the
    relative interior of ``a``.
    """
    w = intersect(a, b).relative_interior_point()
    return membership(a, w) is Membership.RELATIVE_INTERIOR


# ---------------------------------------------------------------------------
# Linear maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class QuotientMap:
    """
    Linear surjection ``Q^source_dim -> Q^target_dim`` given by its rows.

    Maps built by :func:`quotient_by_span` have reduced echelon rows; ``pivots`` then records
    the pivot column of each row, which makes pulling functionals back a lookup.
    """

    source_dim: int
    target_dim: int
    matrix: tuple[RatVec, ...]
    pivots: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.matrix) != self.target_dim:
            raise DimensionMismatchError('quotient map rows', self.target_dim, len(self.matrix))
        for row in self.matrix:
            if len(row) != self.source_dim:
                raise DimensionMismatchError('quotient map row', self.source_dim, len(row))
        if rank(self.matrix, self.source_dim) != self.target_dim:
            raise ValueError('quotient map must have full row rank')

    @classmethod
    def from_matrix(cls, rows: Sequence[VecLike], source_dim: int) -> QuotientMap:
        """Map with the given rows, e.g. ``[[0, 1]]`` for ``(v1, v2) -> v2``."""
        matrix = tuple(as_vec(r, source_dim, 'matrix row') for r in rows)
        return cls(source_dim, len(matrix), matrix)

    @classmethod
    def identity(cls, dim: int) -> QuotientMap:
        return cls(dim, dim, tuple(unit_vec(dim, i) for i in range(dim)), tuple(range(dim)))

    def apply(self, v: VecLike) -> RatVec:
        vec = as_vec(v, self.source_dim, 'vector')
        return tuple(dot(row, vec) for row in self.matrix)

    def kills(self, v: VecLike) -> bool:
        return is_zero(self.apply(v))

    def lift_coefficients(self, u: VecLike) -> RatVec:
        """
        Coefficients ``c`` with ``sum(c[i] * matrix[i]) == u``.

        A functional ``u`` on the source that vanishes on the kernel factors through the map;
        ``c`` is the factored functional on the target.

        Raises:
            DomainError:
                If ``u`` does not vanish on the kernel.
        """
        vec = as_vec(u, self.source_dim, 'functional')
        if self.target_dim == 0:
            coeffs: RatVec = ()
        elif self.pivots is not None:
            coeffs = tuple(vec[p] / row[p] for p, row in zip(self.pivots, self.matrix))
        else:
            m = _to_sympy(self.matrix, self.source_dim)
            solved = _to_sympy([vec], self.source_dim) * m.T * (m * m.T).inv()
            coeffs = _from_sympy(solved)[0]
        recombined = zero_vec(self.source_dim)
        for c, row in zip(coeffs, self.matrix):
            recombined = vec_add(recombined, vec_scale(c, row))
        if recombined != vec:
            raise DomainError(f'functional {format_vec(vec)} does not vanish on the kernel of the quotient map')
        return coeffs


def quotient_by_span(tau: RatCone) -> QuotientMap:
    """
    Quotient ``Q^dim -> Q^dim / span(tau)``.

    The rows are the canonical basis of the annihilator of ``span(tau)`` (reduced echelon,
    primitive), which is exactly the equation side of ``tau``.
    """
    pivots = tuple(next(i for i, x in enumerate(row) if x != 0) for row in tau.equations)
    return QuotientMap(tau.dim, len(tau.equations), tau.equations, pivots)


def project_cone(c: RatCone, q: QuotientMap) -> RatCone:
    """
    Image of ``c`` under ``q``.

    Raises:
        DimensionMismatchError:
            If ``q`` does not start in the ambient space of ``c``.
    """
    if q.source_dim != c.dim:
        raise DimensionMismatchError('quotient map source', c.dim, q.source_dim)
    return RatCone.from_rays(q.target_dim, [q.apply(r) for r in c.rays], [q.apply(v) for v in c.lines])


__all__ = [
    'RatVec',
    'as_vec',
    'dot',
    'primitive',
    'format_vec',
    'canonical_basis',
    'Membership',
    'RatCone',
    'QuotientMap',
    'dual_cone',
    'face_lattice',
    'is_face',
    'proper_faces',
    'membership',
    'intersect',
    'relative_interior_meets',
    'project_cone',
    'quotient_by_span',
]
