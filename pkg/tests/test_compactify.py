from __future__ import annotations

import random

import pytest

from spherical_trop.colored_fan import ColoredCone, ColoredFan, colored_faces
from spherical_trop.compactify import (
    build_trop_space,
    certify_limit,
    compactify_cone,
    evaluate_extended,
    extend_functional,
    limit_of_ray,
    p_image,
)
from spherical_trop.errors import (
    DimensionMismatchError,
    DomainError,
    InvalidFanError,
    NoStratumError,
    NotAFaceError,
    NotStrictlyConvexError,
)
from spherical_trop.polyhedral import RatCone, face_lattice, vec_add, vec_scale, zero_vec
from spherical_trop.puiseux import INFINITY
from spherical_trop.registry import registry_get

QUADRANT = RatCone.from_rays(2, [(1, 0), (0, 1)])
X_CONE = RatCone.from_rays(2, [(-1, 1), (1, 0)])


def test_extend_functional_on_quadrant():
    p = extend_functional(QUADRANT, RatCone.ray(1, 0), (3,))
    assert evaluate_extended(p, (0, 1)) == 3
    assert evaluate_extended(p, (1, 0)) is INFINITY
    assert p.evaluate((1, 1)) is INFINITY
    with pytest.raises(DomainError):
        evaluate_extended(p, (-1, 0))


def test_extend_functional_on_gl2_cone():
    p = extend_functional(X_CONE, RatCone.ray(1, 0), (2,))
    assert p.evaluate((0, 1)) == 2
    assert p.evaluate((0, 3)) == 6
    assert p.evaluate((1, 1)) is INFINITY


def test_extend_functional_at_the_extremes():
    inside = extend_functional(QUADRANT, RatCone.zero(2), (1, 2))
    assert inside.evaluate((1, 1)) == 3
    corner = extend_functional(QUADRANT, QUADRANT, ())
    assert corner.evaluate((0, 0)) == 0
    assert corner.evaluate((1, 0)) is INFINITY


def test_extend_functional_errors():
    with pytest.raises(NotAFaceError):
        extend_functional(QUADRANT, RatCone.ray(1, 1), (0,))
    with pytest.raises(DimensionMismatchError):
        extend_functional(QUADRANT, RatCone.ray(1, 0), (1, 2))


def test_trop_space_sizes(sl2, torus2):
    assert len(build_trop_space(sl2.sd, sl2.fan('Bl_O_P2'))) == 3
    assert len(build_trop_space(torus2.sd, torus2.fan('P2'))) == 7
    assert len(build_trop_space(sl2.sd, sl2.fan('A2_minus_O'))) == 1


def test_trop_space_strata(gl2):
    space = build_trop_space(gl2.sd, gl2.fan('X'))
    assert space.stratum_for(ColoredCone(RatCone.zero(2))) == gl2.sd.vcone
    assert space.stratum_for(ColoredCone(RatCone.ray(1, 0))) == RatCone.whole(1)
    assert space.stratum_for(ColoredCone(X_CONE, frozenset({'D'}))) == RatCone.zero(0)
    with pytest.raises(NotAFaceError):
        space.stratum_for(ColoredCone(X_CONE))

    assert space.contains(extend_functional(X_CONE, RatCone.zero(2), (1, 0)))
    assert not space.contains(extend_functional(X_CONE, RatCone.zero(2), (0, 1)))


def test_trop_space_rejects_invalid_fans(sl2):
    plus = ColoredCone.of(1, [(1,)])
    with pytest.raises(InvalidFanError):
        build_trop_space(sl2.sd, ColoredFan((ColoredCone.of(1, []), plus, plus)))


def test_toric_compactification_of_quadrant():
    closure = compactify_cone(QUADRANT)
    assert closure.mode == 'toric'
    assert len(closure) == 4
    assert closure.piece(RatCone.zero(2)) == QUADRANT
    assert closure.piece(RatCone.ray(1, 0)) == RatCone.ray(1)
    assert closure.piece(QUADRANT) == RatCone.zero(0)


def test_colored_compactification(gl2):
    assert len(compactify_cone(RatCone.from_rays(2, [(1, 0), (1, 1)]), gl2.sd)) == 4
    closure = compactify_cone(ColoredCone(X_CONE, frozenset({'D'})), gl2.sd)
    assert closure.mode == 'colored'
    assert len(closure) == 3
    with pytest.raises(NotAFaceError):
        closure.piece(RatCone.ray(-1, 1))


def test_compactify_rejects_lines():
    with pytest.raises(NotStrictlyConvexError):
        compactify_cone(RatCone.from_halfspaces(2, [(1, -1)]))


@pytest.mark.parametrize('name', ['torus(2)', 'torus(3)', 'sl2_h', 'gl2'])
def test_strata_match_faces_on_registry_cones(name):
    entry = registry_get(name)
    for _, fan in entry.fans:
        for cc in fan.cones:
            assert len(compactify_cone(cc, entry.sd)) == len(colored_faces(entry.sd, cc))
            assert len(compactify_cone(cc.cone)) == len(face_lattice(cc.cone))


def test_p_image_of_gl2_x(gl2):
    image = p_image(gl2.sd, gl2.fan('X'))
    assert not image.satisfies_star
    assert len(image) == 3
    assert image.pieces(ColoredCone(RatCone.zero(2))) == (RatCone.from_rays(2, [(1, 0), (1, 1)]),)
    assert image.pieces(ColoredCone(RatCone.ray(1, 0))) == (RatCone.ray(1),)
    assert image.pieces(ColoredCone(X_CONE, frozenset({'D'}))) == (RatCone.zero(0),)


def test_p_image_of_gl2_x_prime(gl2):
    image = p_image(gl2.sd, gl2.fan('X_prime'))
    assert image.satisfies_star
    assert len(image) == 2
    assert image.pieces(ColoredCone(RatCone.zero(2))) == (RatCone.ray(1, 0),)


def test_p_image_glues_along_shared_faces(torus2):
    image = p_image(torus2.sd, torus2.fan('P2'))
    assert image.satisfies_star
    assert len(image) == 7
    assert len(image.pieces(ColoredCone(RatCone.zero(2)))) == 3
    assert len(image.pieces(ColoredCone(RatCone.ray(1, 0)))) == 2


@pytest.mark.parametrize('name', ['torus(2)', 'sl2_h', 'gl2'])
def test_p_image_is_the_colored_compactification_under_star(name):
    entry = registry_get(name)
    for _, fan in entry.fans:
        image = p_image(entry.sd, fan)
        if image.satisfies_star:
            for cc, closure in image.per_cone:
                assert closure == compactify_cone(cc, entry.sd)


def test_limits_on_quadrant():
    closure = compactify_cone(QUADRANT)
    p = limit_of_ray(closure, (0, 1), (1, 0))
    assert p.tau == RatCone.ray(1, 0)
    assert p.functional == (1,)
    assert certify_limit(p, (0, 1), (1, 0))

    corner = limit_of_ray(closure, (0, 1), (1, 1))
    assert corner.tau == QUADRANT
    assert corner.functional == ()

    assert limit_of_ray(closure, (5, 1), (1, 0)) == p


def test_limit_errors():
    closure = compactify_cone(QUADRANT)
    with pytest.raises(NoStratumError):
        limit_of_ray(closure, (0, 1), (0, 0))
    with pytest.raises(NoStratumError):
        limit_of_ray(closure, (0, 1), (-1, 0))
    with pytest.raises(DomainError):
        limit_of_ray(closure, (-1, 1), (1, 0))


def test_colored_limits(gl2):
    closure = compactify_cone(ColoredCone(X_CONE, frozenset({'D'})), gl2.sd)
    with pytest.raises(NoStratumError):
        limit_of_ray(closure, (1, 0), (-1, 1))
    p = limit_of_ray(closure, (1, 0), (1, 1))
    assert p.tau == X_CONE
    assert certify_limit(p, (1, 0), (1, 1))


@pytest.mark.parametrize('seed', range(30))
def test_random_limits_are_certified(seed):
    rng = random.Random(seed)
    sigma = rng.choice([QUADRANT, X_CONE, RatCone.from_rays(2, [(1, 0), (1, 2)])])
    closure = compactify_cone(sigma)

    def combo():
        v = zero_vec(2)
        for r in sigma.rays:
            v = vec_add(v, vec_scale(rng.randint(0, 3), r))
        return v

    v0, w = combo(), combo()
    if not any(w):
        w = sigma.rays[0]
    p = limit_of_ray(closure, v0, w)
    assert certify_limit(p, v0, w)
    shifted = vec_add(v0, vec_scale(2, p.tau.relative_interior_point()))
    assert limit_of_ray(closure, shifted, w) == p
