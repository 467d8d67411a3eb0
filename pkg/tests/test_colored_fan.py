from __future__ import annotations

import pytest

from spherical_trop.colored_fan import (
    ColoredCone,
    ColoredFan,
    SphericalData,
    check_star,
    colored_faces,
    star_fan,
    validate_colored_cone,
    validate_colored_fan,
    validate_spherical_data,
)
from spherical_trop.errors import NotAFaceError, UnknownColorError
from spherical_trop.polyhedral import RatCone, as_vec
from spherical_trop.registry import registry_get


def test_registry_data_is_valid(sl2, gl2, torus2):
    for entry in (sl2, gl2, torus2):
        assert validate_spherical_data(entry.sd).ok
        for name, fan in entry.fans:
            assert validate_colored_fan(entry.sd, fan).ok, name


def test_gl2_colored_faces(gl2):
    x_cone = ColoredCone.of(2, [(-1, 1), (1, 0)], {'D'})
    faces = colored_faces(gl2.sd, x_cone)
    assert faces == (
        ColoredCone(RatCone.zero(2)),
        ColoredCone(RatCone.ray(1, 0)),
        x_cone,
    )


def test_colored_cone_conditions(gl2, sl2):
    report = validate_colored_cone(gl2.sd, ColoredCone.of(2, [(-1, 1), (1, 0)]))
    assert not report.cc1
    assert report.cc2

    outside = validate_colored_cone(gl2.sd, ColoredCone.of(2, [(-1, 1)], {'D'}))
    assert outside.cc1
    assert not outside.cc2
    assert outside.failures() == ['cc2']

    assert validate_colored_cone(sl2.sd, ColoredCone.of(1, [(1,)], {'D'})).ok


def test_zero_color_fails_cc3():
    sd = SphericalData.create(1, (), {'E': (0,)})
    report = validate_colored_cone(sd, ColoredCone.of(1, [], {'E'}))
    assert not report.cc3


def test_unknown_color_raises(sl2):
    with pytest.raises(UnknownColorError):
        validate_colored_cone(sl2.sd, ColoredCone.of(1, [(1,)], {'Z'}))


def test_duplicate_ray_violates_uniqueness(sl2):
    plus = ColoredCone.of(1, [(1,)])
    fan = ColoredFan((ColoredCone.of(1, []), plus, plus))
    report = validate_colored_fan(sl2.sd, fan)
    assert report.overlaps == ((1, 2),)
    assert report.face_closed
    assert not report.ok


def test_colored_and_uncolored_ray_overlap(sl2):
    fan = ColoredFan((
        ColoredCone.of(1, []),
        ColoredCone.of(1, [(1,)], {'D'}),
        ColoredCone.of(1, [(1,)]),
    ))
    assert validate_colored_fan(sl2.sd, fan).overlaps == ((1, 2),)


def test_missing_face_is_reported(torus2):
    quadrant = ColoredCone.of(2, [(1, 0), (0, 1)])
    report = validate_colored_fan(torus2.sd, ColoredFan((quadrant,)))
    assert not report.face_closed
    assert len(report.missing_faces) == 3


def test_generated_by_closes_under_faces(torus2):
    fan = torus2.fan('P2')
    assert len(fan) == 7
    assert len(fan.maximal_cones()) == 3
    assert ColoredFan.generated_by(torus2.sd, fan.maximal_cones()) == fan


def test_check_star(gl2, sl2):
    assert not check_star(gl2.sd, gl2.fan('X'))
    assert check_star(gl2.sd, gl2.fan('X_prime'))
    assert check_star(sl2.sd, sl2.fan('P2'))


def test_star_of_torus_ray(torus2):
    tau = ColoredCone.of(2, [(1, 0)])
    new_sd, new_fan, q = star_fan(torus2.sd, torus2.fan('P2'), tau)
    assert new_sd.dim == 1
    assert q.matrix == ((0, 1),)
    assert new_fan.cones == (
        ColoredCone(RatCone.zero(1)),
        ColoredCone(RatCone.ray(-1)),
        ColoredCone(RatCone.ray(1)),
    )
    assert validate_colored_fan(new_sd, new_fan).ok


def test_star_of_gl2_ray_keeps_color(gl2):
    tau = ColoredCone.of(2, [(1, 0)])
    new_sd, new_fan, _ = star_fan(gl2.sd, gl2.fan('X'), tau)
    assert new_sd.vcone == RatCone.whole(1)
    assert new_sd.color('D').rho == as_vec([1])
    assert new_fan.cones == (
        ColoredCone(RatCone.zero(1)),
        ColoredCone(RatCone.ray(1), frozenset({'D'})),
    )
    assert validate_colored_fan(new_sd, new_fan).ok


def test_star_with_dominant_color(gl2):
    tau = ColoredCone.of(2, [(1, 0)])
    new_sd, new_fan, _ = star_fan(gl2.sd, gl2.fan('X'), tau, ['D'])
    assert new_sd.colors == ()
    assert all(not cc.colors for cc in new_fan.cones)


def test_star_drops_colors_collapsing_to_zero(sl2):
    tau = ColoredCone.of(1, [(1,)], {'D'})
    new_sd, new_fan, _ = star_fan(sl2.sd, sl2.fan('A2'), tau)
    assert new_sd.dim == 0
    assert new_sd.colors == ()
    assert all(not cc.colors for cc in new_fan.cones)


@pytest.mark.parametrize('name', ['sl2_h', 'gl2', 'torus(2)', 'torus(3)'])
def test_star_of_every_registry_cone_has_valid_data(name):
    entry = registry_get(name)
    for fan_name, fan in entry.fans:
        for tau in fan.cones:
            new_sd, new_fan, _ = star_fan(entry.sd, fan, tau)
            assert validate_spherical_data(new_sd).ok, (fan_name, tau.label())
            assert all(any(c.rho) for c in new_sd.colors)
            assert all(cc.colors <= new_sd.color_names for cc in new_fan.cones)


def test_star_of_zero_cone_is_identity(sl2, gl2):
    for entry, name in ((sl2, 'P2'), (gl2, 'X')):
        fan = entry.fan(name)
        zero = ColoredCone(RatCone.zero(entry.sd.dim))
        new_sd, new_fan, q = star_fan(entry.sd, fan, zero)
        assert new_sd == entry.sd
        assert new_fan == fan.canonical()
        dim = entry.sd.dim
        assert q.matrix == tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim))


def test_star_rejects_non_members(gl2, torus2):
    with pytest.raises(NotAFaceError):
        star_fan(torus2.sd, torus2.fan('A2'), ColoredCone.of(2, [(1, 1)]))
    with pytest.raises(UnknownColorError):
        star_fan(gl2.sd, gl2.fan('X'), ColoredCone.of(2, [(1, 0)]), ['Z'])
