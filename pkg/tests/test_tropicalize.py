from __future__ import annotations

import random
from fractions import Fraction

import pytest

from spherical_trop.compactify import build_trop_space
from spherical_trop.errors import DimensionMismatchError, DomainError, SamplingInstabilityError, ZeroCoordinateError
from spherical_trop.polyhedral import RatCone, as_vec
from spherical_trop.puiseux import (
    INFINITY,
    LaurentPolynomial,
    PuiseuxPoint,
    PuiseuxSeries,
    invariant_factor_valuations,
    val_min,
)
from spherical_trop.registry import registry_get, semiinvariant_eval
from spherical_trop.tropicalize import (
    Family,
    MonomialValuation,
    SeminormSample,
    parse_mu,
    retract_point,
    retraction_breakpoints,
    retraction_value,
    trp_generic,
    trp_toric_extended,
    trp_torus,
)


def random_series(rng: random.Random, zero_chance: float = 0.0) -> PuiseuxSeries:
    if rng.random() < zero_chance:
        return PuiseuxSeries()
    terms = {}
    for _ in range(rng.randint(1, 3)):
        terms[Fraction(rng.randint(-4, 6), rng.choice([1, 2, 3]))] = rng.choice([-3, -2, -1, 1, 2, 3, Fraction(1, 2)])
    return PuiseuxSeries.from_terms(terms.items())


def random_laurent(rng: random.Random, nvars: int, polynomial: bool = False) -> LaurentPolynomial:
    low = 0 if polynomial else -2
    return LaurentPolynomial.from_terms(
        nvars,
        [(tuple(rng.randint(low, 2) for _ in range(nvars)), rng.choice([-2, -1, 1, 3])) for _ in range(rng.randint(1, 3))],
    )


def random_torus_point(rng: random.Random, n: int) -> PuiseuxPoint:
    return PuiseuxPoint(tuple(random_series(rng) for _ in range(n)))


# ---------------------------------------------------------------------------
# torus and extended toric tropicalization
# ---------------------------------------------------------------------------

def test_trp_torus():
    assert trp_torus(PuiseuxPoint.parse('(u^2 + u^3, 5*u^(-1/2))')) == (2, Fraction(-1, 2))
    with pytest.raises(ZeroCoordinateError):
        trp_torus(PuiseuxPoint.parse('(u, 0)'))


def test_extended_on_affine_line():
    a1 = registry_get('torus(1)').fan('A1')
    p = trp_toric_extended(a1, PuiseuxPoint.parse('(0)'))
    assert p.tau == RatCone.ray(1)
    assert p.functional == ()
    q = trp_toric_extended(a1, PuiseuxPoint.parse('(u^3)'))
    assert q.tau.is_zero
    assert q.functional == (3,)


def test_extended_on_affine_plane(torus2):
    a2 = torus2.fan('A2')
    p = trp_toric_extended(a2, PuiseuxPoint.parse('(u^3, 0)'))
    assert p.tau == RatCone.ray(0, 1)
    assert p.functional == (3,)
    q = trp_toric_extended(a2, PuiseuxPoint.parse('(u, u)'))
    assert q.tau.is_zero
    assert q.functional == (1, 1)


def test_extended_with_chart(torus2):
    p2 = torus2.fan('P2')
    chart = RatCone.from_rays(2, [(1, 0), (-1, -1)])
    p = trp_toric_extended(p2, PuiseuxPoint.parse('(u^2, u^5)'), chart)
    assert p.tau.is_zero
    assert p.functional == (-3, -5)
    with pytest.raises(DomainError):
        trp_toric_extended(p2, PuiseuxPoint.parse('(u, u)'))
    with pytest.raises(DomainError):
        trp_toric_extended(p2, PuiseuxPoint.parse('(u, u)'), RatCone.from_rays(2, [(1, 0), (1, 1)]))


def test_extended_point_lies_on_its_stratum(torus2):
    space = build_trop_space(torus2.sd, torus2.fan('A2'))
    for text in ('(u, u^2)', '(0, u)', '(u^-1, 0)', '(0, 0)'):
        assert space.contains(trp_toric_extended(torus2.fan('A2'), PuiseuxPoint.parse(text)))


# ---------------------------------------------------------------------------
# generic tropicalization
# ---------------------------------------------------------------------------

def test_generic_examples(sl2, gl2):
    assert trp_generic(sl2, PuiseuxPoint.parse('(u^2, u^3)')) == (2,)
    assert trp_generic(sl2, PuiseuxPoint.parse('(u^2, u^3)'), seed=1) == (2,)
    assert trp_generic(sl2, PuiseuxPoint.parse('(1, u)')) == (0,)
    assert trp_generic(gl2, PuiseuxPoint.parse('diag(u, 1)')) == (1, 0)


def test_generic_rejects_points_outside_the_orbit(sl2, gl2):
    with pytest.raises(DomainError):
        trp_generic(sl2, PuiseuxPoint.parse('(0, 0)'))
    with pytest.raises(DomainError):
        trp_generic(gl2, PuiseuxPoint.parse('[[1, u], [1, u]]'))
    with pytest.raises(DimensionMismatchError):
        trp_generic(gl2, PuiseuxPoint.parse('(1, u)'))


@pytest.mark.parametrize('seed', range(100))
def test_generic_matches_oracles(seed, sl2, gl2, torus2):
    rng = random.Random(seed)

    a, c = random_series(rng, 0.2), random_series(rng, 0.2)
    if a.is_zero and c.is_zero:
        c = PuiseuxSeries.monomial(1, 1)
    assert trp_generic(sl2, PuiseuxPoint((a, c))) == (val_min([a.val(), c.val()]),)

    while True:
        entries = tuple(random_series(rng, 0.3) for _ in range(4))
        x = PuiseuxPoint(entries)
        d1, d2 = invariant_factor_valuations(x.matrix(2))
        if d2 is not INFINITY:
            break
    value = trp_generic(gl2, x)
    assert value == (d2, d1)
    assert gl2.sd.vcone.contains(value)

    t = random_torus_point(rng, 2)
    assert trp_generic(torus2, t) == trp_torus(t)


@pytest.mark.parametrize('seed', range(20))
def test_generic_ignores_leading_coefficients(seed, gl2):
    rng = random.Random(seed)
    x = PuiseuxPoint.parse('[[u + u^2, 3*u^2], [u^(1/2), 1 - u]]')
    scaled = PuiseuxPoint(tuple(rng.choice([-5, -2, 2, 7]) * c for c in x.coords))
    finer = PuiseuxPoint(tuple(c + PuiseuxSeries.monomial(1, 20) for c in x.coords))
    assert trp_generic(gl2, scaled) == trp_generic(gl2, x)
    assert trp_generic(gl2, finer) == trp_generic(gl2, x)


def test_generic_is_deterministic_per_seed(gl2):
    x = PuiseuxPoint.parse('[[u, 1], [1, u^2]]')
    assert trp_generic(gl2, x, samples=6, seed=5) == trp_generic(gl2, x, samples=6, seed=5)


def test_stability_check(sl2, gl2):
    assert trp_generic(gl2, PuiseuxPoint.parse('diag(u, 1)'), check_stability=True) == (1, 0)
    x = PuiseuxPoint.parse('(1 + u, -1)')
    values = set()
    for seed in range(200):
        try:
            values.add(trp_generic(sl2, x, samples=1, seed=seed, entry_range=1, check_stability=True))
        except SamplingInstabilityError:
            values.add('unstable')
    assert (0,) in values
    assert 'unstable' in values


def test_stability_is_checked_unless_turned_off(sl2):
    x = PuiseuxPoint.parse('(1 + u, -1)')
    unstable = []
    for seed in range(200):
        try:
            trp_generic(sl2, x, samples=1, seed=seed, entry_range=1)
        except SamplingInstabilityError:
            unstable.append(seed)
    assert unstable
    unchecked = [trp_generic(sl2, x, samples=1, seed=seed, entry_range=1, check_stability=False) for seed in unstable]
    assert all(v != (0,) for v in unchecked)


def test_semiinvariants_are_multiplicative(gl2):
    rng = random.Random(7)
    x = PuiseuxPoint.parse('[[u, 2], [u^3, 1 + u]]')
    for g in [gl2.sampler(rng, 9) for _ in range(5)]:
        product = semiinvariant_eval(gl2, {'x22': 2, 'det': 1}, g, x)
        single = semiinvariant_eval(gl2, 'x22', g, x)
        assert product == single * single * semiinvariant_eval(gl2, 'det', g, x)


# ---------------------------------------------------------------------------
# seminorm families
# ---------------------------------------------------------------------------

def test_parse_mu():
    assert parse_mu('inf') is INFINITY
    assert parse_mu('3/2') == Fraction(3, 2)
    assert parse_mu(0) == 0
    for bad in ('-1', 'x'):
        with pytest.raises(ValueError):
            parse_mu(bad)


def test_seminorm_examples():
    one_plus_t = LaurentPolynomial.parse('t + 1', 1)
    x = PuiseuxPoint.parse('(u)')
    assert retraction_value(SeminormSample(INFINITY, x, Family.HOMOTOPY), one_plus_t) == 0

    f = LaurentPolynomial.parse('t1 + t2', 2)
    y = PuiseuxPoint.parse('(u, u^2)')
    assert retraction_value(SeminormSample(Fraction(0), y, Family.HOMOTOPY), f) == 1
    assert retraction_value(SeminormSample(Fraction(1), y, Family.MONOMIAL), f) == 2


def test_endpoints():
    rng = random.Random(3)
    for _ in range(20):
        x = random_torus_point(rng, 2)
        f = random_laurent(rng, 2)
        monomial = retraction_value(SeminormSample(Fraction(0), x, Family.MONOMIAL), f)
        homotopy = retraction_value(SeminormSample(Fraction(0), x, Family.HOMOTOPY), f)
        assert homotopy == monomial
        assert retraction_value(SeminormSample(INFINITY, x, Family.HOMOTOPY), f) == f.valuation_at(x)
        for i in range(2):
            coordinate = LaurentPolynomial.variable(2, i)
            assert retraction_value(SeminormSample(Fraction(0), x, Family.MONOMIAL), coordinate) == trp_torus(x)[i]


@pytest.mark.parametrize('seed', range(100))
def test_torus_tropicalization_is_the_retraction_at_zero(seed):
    rng = random.Random(1000 + seed)
    n = rng.randint(1, 3)
    x = random_torus_point(rng, n)
    s = SeminormSample(Fraction(0), x, Family.MONOMIAL)
    assert tuple(retraction_value(s, LaurentPolynomial.variable(n, i)) for i in range(n)) == trp_torus(x)
    assert retract_point(x).weights == trp_torus(x)


def test_monomial_family_at_infinity_needs_nonnegative_degrees():
    x = PuiseuxPoint.parse('(u, u)')
    f = LaurentPolynomial.parse('t1^-1 + 1', 2)
    with pytest.raises(DomainError):
        retraction_value(SeminormSample(INFINITY, x, Family.MONOMIAL), f)
    g = LaurentPolynomial.parse('t1*t2 + 4', 2)
    assert retraction_value(SeminormSample(INFINITY, x, Family.MONOMIAL), g) == 0


def test_monomial_family_needs_torus_point():
    with pytest.raises(ZeroCoordinateError):
        retraction_value(SeminormSample(Fraction(1), PuiseuxPoint.parse('(u, 0)')), LaurentPolynomial.parse('t1', 2))


def test_negative_mu_is_rejected():
    with pytest.raises(ValueError):
        SeminormSample(Fraction(-1), PuiseuxPoint.parse('(u)'))


@pytest.mark.parametrize('seed', range(50))
def test_retraction_is_a_valuation(seed):
    rng = random.Random(seed)
    x = random_torus_point(rng, 2)
    for family in Family:
        mu = rng.choice([Fraction(0), Fraction(1, 2), Fraction(rng.randint(0, 5), rng.randint(1, 3)), INFINITY])
        laurent = not (family is Family.MONOMIAL and mu is INFINITY)
        f, g = random_laurent(rng, 2, not laurent), random_laurent(rng, 2, not laurent)
        s = SeminormSample(mu, x, family)
        vf, vg = retraction_value(s, f), retraction_value(s, g)
        assert retraction_value(s, f * g) == vf + vg
        total = f + g
        if not total.is_zero:
            assert retraction_value(s, total) >= min(vf, vg)


@pytest.mark.parametrize('seed', range(20))
def test_homotopy_family_is_nondecreasing_in_mu(seed):
    rng = random.Random(seed)
    x = random_torus_point(rng, 2)
    f = random_laurent(rng, 2)
    pieces = retraction_breakpoints(f, x, Family.HOMOTOPY)
    assert all(slope >= 0 for _, slope in pieces)
    mus = [Fraction(k, 4) for k in range(13)] + [INFINITY]
    values = [retraction_value(SeminormSample(mu, x, Family.HOMOTOPY), f) for mu in mus]
    assert all(a <= b for a, b in zip(values, values[1:]))


def test_breakpoints_describe_the_value():
    f = LaurentPolynomial.parse('t1 + t2', 2)
    x = PuiseuxPoint.parse('(u, u^2)')
    assert retraction_breakpoints(f, x, Family.MONOMIAL) == ((1, 1), (2, 1))
    assert retraction_breakpoints(f, x, Family.HOMOTOPY) == ((1, 0), (1, 1), (2, 1))


def test_retract_point_is_idempotent():
    x = PuiseuxPoint.parse('(u, u^2 + 1)')
    v = retract_point(x)
    assert v.weights == (1, 0)
    assert retract_point(v) == v
    assert retract_point(v.as_point()) == v
    assert retract_point(MonomialValuation(as_vec([1, 2]))).weights == (1, 2)
    assert str(v) == '(1, 0)'
    assert v.value(LaurentPolynomial.parse('t1^2 + t1^-1*t2', 2)) == -1
