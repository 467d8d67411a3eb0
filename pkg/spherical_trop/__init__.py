"""
Author:
    Inspyre Softworks

Project:
    SphericalTrop

File:
    spherical_trop/__init__.py


Description:
    Exact combinatorics of spherical embeddings and their tropicalizations: rational
    cones, colored fans, Puiseux series valuations and canonical compactifications.

"""
from __future__ import annotations

from spherical_trop.colored_fan import (
    Color,
    ColoredCone,
    ColoredFan,
    SphericalData,
    check_star,
    colored_faces,
    star_fan,
    validate_colored_cone,
    validate_colored_fan,
)
from spherical_trop.compactify import (
    ExtendedPoint,
    build_trop_space,
    compactify_cone,
    evaluate_extended,
    extend_functional,
    limit_of_ray,
    p_image,
)
from spherical_trop.polyhedral import RatCone, dual_cone, face_lattice, intersect, quotient_by_span
from spherical_trop.puiseux import INFINITY, LaurentPolynomial, PuiseuxPoint, PuiseuxSeries, val
from spherical_trop.registry import registry_get
from spherical_trop.tropicalize import (
    Family,
    SeminormSample,
    retract_point,
    retraction_value,
    trp_generic,
    trp_toric_extended,
    trp_torus,
)

__all__ = [
    'Color',
    'ColoredCone',
    'ColoredFan',
    'SphericalData',
    'check_star',
    'colored_faces',
    'star_fan',
    'validate_colored_cone',
    'validate_colored_fan',
    'ExtendedPoint',
    'build_trop_space',
    'compactify_cone',
    'evaluate_extended',
    'extend_functional',
    'limit_of_ray',
    'p_image',
    'RatCone',
    'dual_cone',
    'face_lattice',
    'intersect',
    'quotient_by_span',
    'INFINITY',
    'LaurentPolynomial',
    'PuiseuxPoint',
    'PuiseuxSeries',
    'val',
    'registry_get',
    'Family',
    'SeminormSample',
    'retract_point',
    'retraction_value',
    'trp_generic',
    'trp_toric_extended',
    'trp_torus',
]
