from __future__ import annotations

import random
from fractions import Fraction

import pytest

from spherical_trop.errors import DimensionMismatchError, DomainError
from spherical_trop.polyhedral import (
    Membership,
    QuotientMap,
    RatCone,
    as_vec,
    dual_cone,
    face_lattice,
    intersect,
    is_face,
    membership,
    primitive,
    project_cone,
    proper_faces,
    quotient_by_span,
    rank,
    relative_interior_meets,
)

QUADRANT = RatCone.from_rays(2, [(1, 0), (0, 1)])
HALFPLANE = RatCone.from_halfspaces(2, [(1, -1)])
X_CONE = RatCone.from_rays(2, [(-1, 1), (1, 0)])


def random_cone(seed: int) -> tuple[RatCone, list[tuple[int, ...]]]:
    rng = random.Random(seed)
    dim = rng.randint(1, 4)
    rays = [tuple(rng.randint(-3, 3) for _ in range(dim)) for _ in range(rng.randint(0, 5))]
    lines = [tuple(rng.randint(-2, 2) for _ in range(dim))] if rng.random() < 0.2 else []
    return RatCone.from_rays(dim, rays, lines), rays + lines


def test_dual_examples():
    assert dual_cone(QUADRANT) == QUADRANT
    assert dual_cone(HALFPLANE) == RatCone.ray(1, -1)
    assert dual_cone(X_CONE) == RatCone.from_rays(2, [(0, 1), (1, 1)])


def test_face_counts():
    assert len(face_lattice(QUADRANT)) == 4
    assert len(face_lattice(HALFPLANE)) == 2
    assert len(face_lattice(X_CONE)) == 4
    assert face_lattice(HALFPLANE)[0] == RatCone.from_rays(2, [], [(1, 1)])


def test_redundant_and_scaled_generators_are_dropped():
    assert RatCone.from_rays(2, [(1, 0), (0, 1), (1, 1), (2, 2)]) == QUADRANT
    assert QUADRANT.rays == ((0, 1), (1, 0))
    assert RatCone.ray(2, 4).rays == ((1, 2),)
    assert RatCone.from_rays(2, [(1, 0), (-1, 0)]) == RatCone.from_rays(2, [], [(1, 0)])


def test_primitive():
    assert primitive(as_vec(['1/2', '3/4'])) == (2, 3)
    assert primitive(as_vec([0, -6])) == (0, -1)
    assert primitive(as_vec([0, 0])) == (0, 0)


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        as_vec([0.5, 1])


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        RatCone.from_rays(2, [(1, 0, 0)])
    with pytest.raises(DimensionMismatchError):
        intersect(QUADRANT, RatCone.ray(1))


def test_membership():
    assert membership(QUADRANT, (1, 1)) is Membership.RELATIVE_INTERIOR
    assert membership(QUADRANT, (1, 0)) is Membership.BOUNDARY
    assert membership(QUADRANT, (-1, 0)) is Membership.OUTSIDE
    assert membership(RatCone.zero(2), (0, 0)) is Membership.RELATIVE_INTERIOR
    assert membership(RatCone.whole(3), (5, -1, 2)) is Membership.RELATIVE_INTERIOR


def test_intersect():
    assert intersect(QUADRANT, HALFPLANE) == RatCone.from_rays(2, [(1, 0), (1, 1)])
    assert intersect(RatCone.ray(1, 0), RatCone.ray(0, 1)).is_zero


def test_relative_interior_meets():
    assert not relative_interior_meets(RatCone.ray(-1, 1), HALFPLANE)
    assert relative_interior_meets(RatCone.ray(1, 1), HALFPLANE)
    assert relative_interior_meets(X_CONE, HALFPLANE)
    assert relative_interior_meets(RatCone.zero(2), HALFPLANE)


def test_smoothness():
    assert QUADRANT.is_smooth
    assert not RatCone.from_rays(2, [(1, 0), (1, 2)]).is_smooth
    assert RatCone.from_rays(2, [(1, 0), (1, 1)]).is_smooth
    assert not HALFPLANE.is_smooth


def test_quotient_by_ray():
    q = quotient_by_span(RatCone.ray(1, 0))
    assert q.target_dim == 1
    assert q.apply((3, 5)) == (5,)
    assert q.lift_coefficients((0, 7)) == (7,)
    with pytest.raises(DomainError):
        q.lift_coefficients((1, 0))


def test_quotient_by_full_cone_has_rank_zero():
    q = quotient_by_span(QUADRANT)
    assert q.target_dim == 0
    assert project_cone(QUADRANT, q) == RatCone.zero(0)


def test_project_cone():
    q = quotient_by_span(RatCone.ray(1, 0))
    assert project_cone(X_CONE, q) == RatCone.ray(1)
    assert project_cone(HALFPLANE, q) == RatCone.whole(1)
    generic = QuotientMap.from_matrix([[1, 1]], 2)
    assert project_cone(QUADRANT, generic) == RatCone.ray(1)
    assert generic.lift_coefficients((2, 2)) == (2,)


def test_is_face():
    assert is_face(RatCone.ray(1, 0), QUADRANT)
    assert not is_face(RatCone.ray(1, 1), QUADRANT)
    assert len(proper_faces(QUADRANT)) == 3


@pytest.mark.parametrize('seed', range(200))
def test_random_cone_descriptions_agree(seed):
    c, generators = random_cone(seed)
    assert c.is_consistent()
    assert all(c.contains(as_vec(g)) for g in generators)
    assert RatCone.from_halfspaces(c.dim, c.halfspaces, c.equations) == c
    assert RatCone.from_rays(c.dim, c.halfspaces, c.equations) == dual_cone(c)
    assert dual_cone(dual_cone(c)) == c


@pytest.mark.parametrize('seed', range(200))
def test_random_cone_face_lattice(seed):
    c, _ = random_cone(seed)
    faces = face_lattice(c)
    assert faces[-1] == c
    assert faces[0] == RatCone.from_rays(c.dim, [], c.lines)
    assert len(set(faces)) == len(faces)
    for f in faces:
        assert c.contains_cone(f)
        assert membership(f, f.relative_interior_point()) is Membership.RELATIVE_INTERIOR
        if f != c:
            assert membership(c, f.relative_interior_point()) is Membership.BOUNDARY
    if not c.lines and rank(c.rays, c.dim) == len(c.rays):
        assert len(faces) == 2 ** len(c.rays)

    rng = random.Random(seed)
    for _ in range(3):
        a, b = rng.choice(faces), rng.choice(faces)
        assert intersect(a, b) in faces


def test_membership_fraction_entries():
    assert membership(QUADRANT, (Fraction(1, 3), 0)) is Membership.BOUNDARY
