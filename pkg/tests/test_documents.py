from __future__ import annotations

import json

import pytest

from spherical_trop.cli.documents import (
    CommandScriptDocument,
    FanDocument,
    PointsDocument,
    SphericalDataDocument,
    document_from_data,
    dumps,
    load_document,
    parse_document,
    serialize_document,
)
from spherical_trop.errors import DocumentError
from spherical_trop.puiseux import PuiseuxPoint
from spherical_trop.registry import registry_get


def r(num, den=1):
    return {'num': num, 'den': den}


FAN_DOC = {
    'kind': 'fan',
    'name': 'halves',
    'cones': [
        {'rays': [], 'colors': []},
        {'rays': [[r(1)]], 'colors': ['D']},
        {'rays': [[r(-1)]], 'colors': []},
    ],
}

POINTS_DOC = {
    'kind': 'points',
    'entries': [
        [[[1, 1, 1, 1], [3, 2, -1, 2]], []],
        [[[-2, 1, 5, 1]], [[0, 1, 1, 1]]],
    ],
}

SCRIPT_DOC = {
    'kind': 'command_script',
    'commands': [['examples'], ['check-star', '--data', 'gl2', 'X']],
}


@pytest.mark.parametrize('name', ['sl2_h', 'gl2', 'torus(2)', 'torus(3)'])
def test_registry_documents_round_trip(name):
    entry = registry_get(name)
    doc = serialize_document(document_from_data(entry.sd, entry.fans))
    decoded = parse_document(json.loads(dumps(doc)))
    assert isinstance(decoded, SphericalDataDocument)
    assert serialize_document(decoded) == doc
    assert decoded.to_spherical_data() == entry.sd
    assert decoded.named_fans() == dict(entry.fans)


@pytest.mark.parametrize('doc', [FAN_DOC, POINTS_DOC, SCRIPT_DOC])
def test_hand_written_documents_round_trip(doc):
    assert serialize_document(parse_document(doc)) == doc


def test_spherical_data_without_fans_stays_without_fans():
    doc = {
        'kind': 'spherical_data',
        'dim': 1,
        'vcone_halfspaces': [[r(-1)]],
        'colors': [{'name': 'D', 'rho': [r(1, 2)]}],
        'basis_names': ['chi'],
    }
    decoded = parse_document(doc)
    assert decoded.fans is None
    assert serialize_document(decoded) == doc


NESTED_FAN_DATA = {
    'kind': 'spherical_data',
    'dim': 1,
    'vcone_halfspaces': [],
    'colors': [{'name': 'D', 'rho': [r(1)]}],
    'basis_names': ['y'],
    'fans': [{'name': 'halves', 'cones': FAN_DOC['cones']}],
}


def test_nested_fans_round_trip():
    decoded = parse_document(NESTED_FAN_DATA)
    assert serialize_document(decoded) == NESTED_FAN_DATA
    assert len(decoded.named_fans()['halves'].cones) == 3


def test_nested_fans_reject_kind():
    doc = dict(NESTED_FAN_DATA, fans=[{'kind': 'fan', 'name': 'halves', 'cones': FAN_DOC['cones']}])
    with pytest.raises(DocumentError) as info:
        parse_document(doc)
    assert info.value.location == '/fans/0'
    assert 'kind' in str(info.value)


def test_decoded_points():
    doc = parse_document(POINTS_DOC)
    assert isinstance(doc, PointsDocument)
    assert doc.entries[0] == PuiseuxPoint.parse('(u - 1/2*u^(3/2), 0)')
    assert doc.entries[1] == PuiseuxPoint.parse('(5*u^(-2), 1)')


def test_decoded_fan_and_script():
    fan = parse_document(FAN_DOC)
    assert isinstance(fan, FanDocument)
    assert fan.name == 'halves'
    assert len(fan.to_fan(1).cones) == 3
    script = parse_document(SCRIPT_DOC)
    assert isinstance(script, CommandScriptDocument)
    assert script.commands[1] == ('check-star', '--data', 'gl2', 'X')


def _fan_with_ray(value):
    return {'kind': 'fan', 'cones': [{'rays': [[value]], 'colors': []}]}


@pytest.mark.parametrize(('doc', 'location'), [
    (_fan_with_ray(r(2, 4)), '/cones/0/rays/0/0'),
    (_fan_with_ray(r(1, 0)), '/cones/0/rays/0/0/den'),
    (_fan_with_ray({'num': 1, 'den': 1, 'x': 0}), '/cones/0/rays/0/0'),
    (_fan_with_ray({'num': 1.5, 'den': 1}), '/cones/0/rays/0/0/num'),
    ({'kind': 'fan', 'cones': [{'rays': []}]}, '/cones/0'),
    ({'kind': 'fan', 'cones': [], 'extra': 1}, '/'),
    ({'kind': 'polytope'}, '/kind'),
    ({'kind': 'points', 'entries': [[[[2, 1, 1, 1], [1, 1, 1, 1]]]]}, '/entries/0/0'),
    ({'kind': 'points', 'entries': [[[[1, 1, 0, 1]]]]}, '/entries/0/0/0'),
    ({'kind': 'command_script', 'commands': [[]]}, '/commands/0'),
])
def test_malformed_documents_report_location(doc, location):
    with pytest.raises(DocumentError) as info:
        parse_document(doc)
    assert info.value.location == location


def test_spherical_data_dimension_errors():
    doc = {
        'kind': 'spherical_data',
        'dim': 2,
        'vcone_halfspaces': [[r(1)]],
        'colors': [],
        'basis_names': ['a', 'b'],
    }
    with pytest.raises(DocumentError) as info:
        parse_document(doc)
    assert info.value.location == '/vcone_halfspaces/0'


def test_load_document_errors(tmp_path):
    missing = tmp_path / 'missing.json'
    with pytest.raises(DocumentError) as info:
        load_document(str(missing))
    assert info.value.source == str(missing)

    broken = tmp_path / 'broken.json'
    broken.write_text('{"kind": ', encoding='utf-8')
    with pytest.raises(DocumentError) as info:
        load_document(str(broken))
    assert info.value.location.startswith('line 1 column')

    bad = tmp_path / 'bad.json'
    bad.write_text(json.dumps(_fan_with_ray(r(2, 4))), encoding='utf-8')
    with pytest.raises(DocumentError) as info:
        load_document(str(bad))
    assert str(info.value).startswith(f'{bad} at /cones/0/rays/0/0: ')


def test_dumps_is_deterministic():
    entry = registry_get('gl2')
    first = dumps(serialize_document(document_from_data(entry.sd, entry.fans)))
    second = dumps(serialize_document(document_from_data(entry.sd, entry.fans)))
    assert first == second
