from __future__ import annotations

from fractions import Fraction

import pytest

from spherical_trop.errors import DimensionMismatchError, DomainError, UnknownCharacterError, UnknownEntryError
from spherical_trop.polyhedral import as_vec
from spherical_trop.puiseux import PuiseuxPoint, PuiseuxSeries
from spherical_trop.registry import color_rho_from_curve, registry_get, semiinvariant_eval
from spherical_trop.tropicalize import sample_group


def _det2(m) -> Fraction:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def test_lookup_is_cached():
    assert registry_get('gl2') is registry_get('gl2')
    assert registry_get(' sl2_h ').name == 'sl2_h'


@pytest.mark.parametrize('name', ['sl3', 'torus(0)', 'torus()', ''])
def test_unknown_names(name):
    with pytest.raises(UnknownEntryError):
        registry_get(name)


def test_torus_entries():
    t3 = registry_get('torus(3)')
    assert t3.sd.dim == 3
    assert t3.fan_names == ('A3', 'P3')
    assert len(t3.fan('A3')) == 8
    assert len(t3.fan('P3')) == 15
    assert t3.characters == ('x1', 'x2', 'x3')
    with pytest.raises(UnknownEntryError):
        t3.fan('P2')


def test_sl2_fans(sl2):
    assert sl2.fan_names == ('A2_minus_O', 'Bl_O_A2', 'P2_minus_O', 'Bl_O_P2', 'A2', 'P2')
    assert [len(sl2.fan(name)) for name in sl2.fan_names] == [1, 2, 2, 3, 2, 3]
    assert sl2.sd.color('D').rho == as_vec([1])


def test_gl2_data(gl2):
    assert gl2.sd.vcone.halfspaces == (as_vec([1, -1]),)
    assert gl2.sd.color('D').rho == as_vec([-1, 1])
    assert gl2.fan_names == ('X', 'X_prime')
    assert len(gl2.fan('X')) == 3
    assert len(gl2.fan('X_prime')) == 2


def test_color_images_match_curves(sl2, gl2):
    assert color_rho_from_curve(sl2, 'D') == sl2.sd.color('D').rho
    assert color_rho_from_curve(gl2, 'D') == gl2.sd.color('D').rho


def test_semiinvariant_eval(sl2, gl2):
    x = PuiseuxPoint.parse('(u^2, u^3)')
    assert semiinvariant_eval(sl2, 'y', sl2.identity, x) == PuiseuxSeries.parse('u^3')
    diag = PuiseuxPoint.parse('diag(u, 1)')
    assert semiinvariant_eval(gl2, 'x22', gl2.identity, diag) == PuiseuxSeries.constant(1)
    assert semiinvariant_eval(gl2, {'x22': 1, 'det': 2}, gl2.identity, diag) == PuiseuxSeries.parse('u^2')


def test_semiinvariant_errors(sl2, gl2):
    with pytest.raises(UnknownCharacterError):
        semiinvariant_eval(sl2, 'det', sl2.identity, PuiseuxPoint.parse('(1, u)'))
    with pytest.raises(DomainError):
        semiinvariant_eval(sl2, 'y', sl2.identity, PuiseuxPoint.parse('(0, 0)'))
    with pytest.raises(DomainError):
        semiinvariant_eval(gl2, 'det', gl2.identity, PuiseuxPoint.parse('[[u, u], [1, 1]]'))
    with pytest.raises(DimensionMismatchError):
        semiinvariant_eval(gl2, 'det', gl2.identity, PuiseuxPoint.parse('(u, 1)'))


def test_samplers_draw_group_elements(sl2, gl2):
    for (m,) in sample_group(sl2, 20, seed=3, entry_range=5):
        assert _det2(m) == 1
    for left, right in sample_group(gl2, 20, seed=3, entry_range=5):
        assert _det2(left) != 0
        assert _det2(right) != 0
        assert all(abs(x) <= 5 for row in left + right for x in row)


def test_sampling_is_seeded(gl2):
    assert sample_group(gl2, 5, 11, 9) == sample_group(gl2, 5, 11, 9)
    assert sample_group(gl2, 5, 11, 9) != sample_group(gl2, 5, 12, 9)
