"""
Author:
    Inspyre Softworks

Project:
    SphericalTrop

File:
    spherical_trop/cli/documents.py

Description:
    JSON input documents for the CLI and the JSON encoding of results.

    Every number is an exact rational written ``{"num": n, "den": d}`` with ``d > 0`` and the
    fraction in lowest terms. A Puiseux series is a list of terms
    ``[exp_num, exp_den, coeff_num, coeff_den]`` with strictly increasing exponents and
    nonzero coefficients. Documents are decoded strictly so that re-encoding a decoded
    document reproduces it exactly.
"""

from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Final, Sequence

from spherical_trop.colored_fan import Color, ColoredCone, ColoredFan, SphericalData
from spherical_trop.compactify import CompactifiedCone, ExtendedPoint
from spherical_trop.errors import DocumentError
from spherical_trop.polyhedral import RatCone, RatVec
from spherical_trop.puiseux import INFINITY, AdditiveVal, PuiseuxPoint, PuiseuxSeries

KIND_SPHERICAL_DATA: Final[str] = 'spherical_data'
KIND_FAN: Final[str] = 'fan'
KIND_POINTS: Final[str] = 'points'
KIND_COMMAND_SCRIPT: Final[str] = 'command_script'
DOCUMENT_KINDS: Final[frozenset[str]] = frozenset({KIND_SPHERICAL_DATA, KIND_FAN, KIND_POINTS, KIND_COMMAND_SCRIPT})

STDIN_SOURCE: Final[str] = '-'


# ---------------------------------------------------------------------------
# Decoded documents
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class ConeSpec:
    """A colored cone exactly as written: rays and color names in document order."""

    rays: tuple[RatVec, ...]
    colors: tuple[str, ...]

    def to_colored_cone(self, dim: int) -> ColoredCone:
        return ColoredCone(RatCone.from_rays(dim, self.rays), frozenset(self.colors))


@dataclass(frozen=True, slots=True)
class FanDocument:
    cones: tuple[ConeSpec, ...]
    name: str | None = None

    def to_fan(self, dim: int) -> ColoredFan:
        return ColoredFan(tuple(c.to_colored_cone(dim) for c in self.cones))


@dataclass(frozen=True, slots=True)
class SphericalDataDocument:
    dim: int
    vcone_halfspaces: tuple[RatVec, ...]
    colors: tuple[tuple[str, RatVec], ...]
    basis_names: tuple[str, ...]
    fans: tuple[tuple[str, FanDocument], ...] | None = None

    def to_spherical_data(self) -> SphericalData:
        return SphericalData(
            self.dim,
            RatCone.from_halfspaces(self.dim, self.vcone_halfspaces),
            tuple(Color(name, rho) for name, rho in self.colors),
            self.basis_names,
        )

    def named_fans(self) -> dict[str, ColoredFan]:
        return {name: fan.to_fan(self.dim) for name, fan in self.fans or ()}


@dataclass(frozen=True, slots=True)
class PointsDocument:
    entries: tuple[PuiseuxPoint, ...]


@dataclass(frozen=True, slots=True)
class CommandScriptDocument:
    commands: tuple[tuple[str, ...], ...]


Document = SphericalDataDocument | FanDocument | PointsDocument | CommandScriptDocument


# ---------------------------------------------------------------------------
# Strict decoding
# ---------------------------------------------------------------------------

def _fail(message: str, where: str) -> DocumentError:
    return DocumentError(message, location=where or '/')


def _expect(value: Any, kind: type | tuple[type, ...], where: str, what: str) -> Any:
    if isinstance(value, bool) or not isinstance(value, kind):
        raise _fail(f'{what} must be {getattr(kind, "__name__", kind)}, got {type(value).__name__}', where)
    return value


def _int(value: Any, where: str) -> int:
    return _expect(value, int, where, 'value')


def decode_rational(value: Any, where: str) -> Fraction:
    obj = _expect(value, dict, where, 'rational')
    if set(obj) != {'num', 'den'}:
        raise _fail(f'rational needs exactly the keys "num" and "den", got {sorted(obj)}', where)
    num, den = _int(obj['num'], f'{where}/num'), _int(obj['den'], f'{where}/den')
    if den <= 0:
        raise _fail(f'denominator must be positive, got {den}', f'{where}/den')
    if math.gcd(num, den) != 1:
        raise _fail(f'{num}/{den} is not in lowest terms', where)
    return Fraction(num, den)


def decode_vec(value: Any, where: str, dim: int | None = None) -> RatVec:
    items = _expect(value, list, where, 'vector')
    if dim is not None and len(items) != dim:
        raise _fail(f'vector must have {dim} entries, got {len(items)}', where)
    return tuple(decode_rational(x, f'{where}/{i}') for i, x in enumerate(items))


def decode_vecs(value: Any, where: str, dim: int) -> tuple[RatVec, ...]:
    items = _expect(value, list, where, 'vector list')
    return tuple(decode_vec(v, f'{where}/{i}', dim) for i, v in enumerate(items))


def decode_series(value: Any, where: str) -> PuiseuxSeries:
    terms = _expect(value, list, where, 'series')
    decoded = []
    for i, term in enumerate(terms):
        at = f'{where}/{i}'
        raw = _expect(term, list, at, 'series term')
        if len(raw) != 4:
            raise _fail(f'series term must be [exp_num, exp_den, coeff_num, coeff_den], got {len(raw)} entries', at)
        en, ed, cn, cd = (_int(x, f'{at}/{j}') for j, x in enumerate(raw))
        for num, den, label in ((en, ed, 'exponent'), (cn, cd, 'coefficient')):
            if den <= 0 or math.gcd(num, den) != 1:
                raise _fail(f'{label} {num}/{den} must have a positive denominator and be in lowest terms', at)
        if cn == 0:
            raise _fail('series coefficients must be nonzero', at)
        decoded.append((Fraction(en, ed), Fraction(cn, cd)))
    exps = [e for e, _ in decoded]
    if any(b <= a for a, b in zip(exps, exps[1:])):
        raise _fail('series exponents must be strictly increasing', where)
    return PuiseuxSeries(tuple(decoded))


def _name_list(value: Any, where: str) -> tuple[str, ...]:
    items = _expect(value, list, where, 'name list')
    return tuple(_expect(x, str, f'{where}/{i}', 'name') for i, x in enumerate(items))


def _check_keys(obj: dict, required: set[str], optional: set[str], where: str) -> None:
    missing = required - set(obj)
    if missing:
        raise _fail(f'missing keys {sorted(missing)}', where)
    extra = set(obj) - required - optional
    if extra:
        raise _fail(f'unexpected keys {sorted(extra)}', where)


def _decode_fan(obj: Any, where: str, dim: int | None) -> FanDocument:
    obj = _expect(obj, dict, where, 'fan')
    # nested fans take their kind from the enclosing document
    _check_keys(obj, {'cones'}, {'name'} if where else {'kind', 'name'}, where)
    raw_cones = _expect(obj['cones'], list, f'{where}/cones', 'cone list')
    cones = []
    for i, cone in enumerate(raw_cones):
        at = f'{where}/cones/{i}'
        cone = _expect(cone, dict, at, 'cone')
        _check_keys(cone, {'rays', 'colors'}, set(), at)
        rays_raw = _expect(cone['rays'], list, f'{at}/rays', 'ray list')
        if dim is None and rays_raw:
            dim = len(_expect(rays_raw[0], list, f'{at}/rays/0', 'vector'))
        rays = decode_vecs(rays_raw, f'{at}/rays', dim) if rays_raw else ()
        colors = _name_list(cone['colors'], f'{at}/colors')
        cones.append(ConeSpec(rays, colors))
    name = obj.get('name')
    if name is not None and not where:
        _expect(name, str, '/name', 'fan name')
    return FanDocument(tuple(cones), name if not where else None)


def _decode_spherical_data(obj: dict, where: str) -> SphericalDataDocument:
    _check_keys(obj, {'dim', 'vcone_halfspaces', 'colors', 'basis_names'}, {'kind', 'fans'}, where)
    dim = _int(obj['dim'], f'{where}/dim')
    if dim < 0:
        raise _fail(f'dim must be non-negative, got {dim}', f'{where}/dim')
    halfspaces = decode_vecs(obj['vcone_halfspaces'], f'{where}/vcone_halfspaces', dim)
    colors = []
    for i, color in enumerate(_expect(obj['colors'], list, f'{where}/colors', 'color list')):
        at = f'{where}/colors/{i}'
        color = _expect(color, dict, at, 'color')
        _check_keys(color, {'name', 'rho'}, set(), at)
        colors.append((_expect(color['name'], str, f'{at}/name', 'name'), decode_vec(color['rho'], f'{at}/rho', dim)))
    basis = _name_list(obj['basis_names'], f'{where}/basis_names')
    if len(basis) != dim:
        raise _fail(f'basis_names must have {dim} entries, got {len(basis)}', f'{where}/basis_names')
    fans = []
    for i, fan in enumerate(_expect(obj.get('fans', []), list, f'{where}/fans', 'fan list')):
        at = f'{where}/fans/{i}'
        fan = _expect(fan, dict, at, 'fan')
        name = _expect(fan.get('name'), str, f'{at}/name', 'fan name')
        fans.append((name, _decode_fan(fan, at, dim)))
    return SphericalDataDocument(dim, halfspaces, tuple(colors), basis, tuple(fans) if 'fans' in obj else None)


def _decode_points(obj: dict, where: str) -> PointsDocument:
    _check_keys(obj, {'entries'}, {'kind'}, where)
    points = []
    for i, entry in enumerate(_expect(obj['entries'], list, f'{where}/entries', 'entry list')):
        at = f'{where}/entries/{i}'
        coords = _expect(entry, list, at, 'point')
        points.append(PuiseuxPoint(tuple(decode_series(c, f'{at}/{j}') for j, c in enumerate(coords))))
    return PointsDocument(tuple(points))


def _decode_script(obj: dict, where: str) -> CommandScriptDocument:
    _check_keys(obj, {'commands'}, {'kind'}, where)
    commands = []
    for i, command in enumerate(_expect(obj['commands'], list, f'{where}/commands', 'command list')):
        argv = _name_list(command, f'{where}/commands/{i}')
        if not argv:
            raise _fail('a command needs at least its name', f'{where}/commands/{i}')
        commands.append(argv)
    return CommandScriptDocument(tuple(commands))


def parse_document(obj: Any, source: str | None = None) -> Document:
    """
    Decode a JSON value into a document.

    Raises:
        DocumentError:
            With the offending location when the value does not follow the schema.
    """
    try:
        obj = _expect(obj, dict, '', 'document')
        kind = obj.get('kind')
        if kind not in DOCUMENT_KINDS:
            raise _fail(f'kind must be one of {sorted(DOCUMENT_KINDS)}, got {kind!r}', '/kind')
        if kind == KIND_SPHERICAL_DATA:
            return _decode_spherical_data(obj, '')
        if kind == KIND_FAN:
            return _decode_fan(obj, '', None)
        if kind == KIND_POINTS:
            return _decode_points(obj, '')
        return _decode_script(obj, '')
    except DocumentError as exc:
        raise exc.with_source(source) if source else exc


def load_document(path: str) -> Document:
    """
    Read and decode a document from ``path`` (``'-'`` reads standard input).

    Raises:
        DocumentError:
            If the file cannot be read, is not JSON, or does not follow the schema.
    """
    try:
        text = sys.stdin.read() if path == STDIN_SOURCE else Path(path).read_text(encoding='utf-8')
    except OSError as exc:
        raise DocumentError(f'cannot read document: {exc.strerror or exc}', source=path) from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, source=path, location=f'line {exc.lineno} column {exc.colno}') from None
    return parse_document(obj, path)


# ---------------------------------------------------------------------------
# Encoding
# ---------------------------------------------------------------------------

def encode_rational(x: Fraction) -> dict[str, int]:
    return {'num': x.numerator, 'den': x.denominator}


def encode_vec(v: Sequence[Fraction]) -> list[dict[str, int]]:
    return [encode_rational(x) for x in v]


def encode_value(x: AdditiveVal) -> dict[str, int] | str:
    return 'inf' if x is INFINITY else encode_rational(x)


def encode_series(f: PuiseuxSeries) -> list[list[int]]:
    return [[e.numerator, e.denominator, c.numerator, c.denominator] for e, c in f.terms]


def encode_point(x: PuiseuxPoint) -> list[list[list[int]]]:
    return [encode_series(c) for c in x.coords]


def encode_cone(c: RatCone) -> dict[str, Any]:
    return {
        'dim': c.dim,
        'rays': [encode_vec(r) for r in c.rays],
        'lines': [encode_vec(v) for v in c.lines],
        'halfspaces': [encode_vec(u) for u in c.halfspaces],
        'equations': [encode_vec(e) for e in c.equations],
    }


def encode_colored_cone(cc: ColoredCone) -> dict[str, Any]:
    return {'rays': [encode_vec(r) for r in cc.cone.rays], 'colors': sorted(cc.colors)}


def encode_fan(fan: ColoredFan) -> list[dict[str, Any]]:
    return [encode_colored_cone(cc) for cc in fan.cones]


def encode_extended_point(p: ExtendedPoint) -> dict[str, Any]:
    return {
        'stratum': encode_colored_cone(p.stratum),
        'functional': encode_vec(p.functional),
        'quotient': [encode_vec(row) for row in p.quotient.matrix],
    }


def encode_compactified(c: CompactifiedCone) -> dict[str, Any]:
    return {
        'sigma': encode_vec_list(c.sigma.rays),
        'mode': c.mode,
        'strata': [{'face': encode_colored_cone(face), 'piece': encode_cone(piece)} for face, piece in c.strata],
    }


def encode_vec_list(vs: Sequence[RatVec]) -> list[list[dict[str, int]]]:
    return [encode_vec(v) for v in vs]


def serialize_document(doc: Document) -> dict[str, Any]:
    """Encode a document with canonical field order; inverse of :func:`parse_document`."""
    if isinstance(doc, SphericalDataDocument):
        out: dict[str, Any] = {
            'kind': KIND_SPHERICAL_DATA,
            'dim': doc.dim,
            'vcone_halfspaces': encode_vec_list(doc.vcone_halfspaces),
            'colors': [{'name': name, 'rho': encode_vec(rho)} for name, rho in doc.colors],
            'basis_names': list(doc.basis_names),
        }
        if doc.fans is not None:
            out['fans'] = [{'name': name, 'cones': _encode_cone_specs(fan)} for name, fan in doc.fans]
        return out
    if isinstance(doc, FanDocument):
        out = {'kind': KIND_FAN}
        if doc.name is not None:
            out['name'] = doc.name
        out['cones'] = _encode_cone_specs(doc)
        return out
    if isinstance(doc, PointsDocument):
        return {'kind': KIND_POINTS, 'entries': [encode_point(x) for x in doc.entries]}
    return {'kind': KIND_COMMAND_SCRIPT, 'commands': [list(c) for c in doc.commands]}


def _encode_cone_specs(fan: FanDocument) -> list[dict[str, Any]]:
    return [{'rays': encode_vec_list(c.rays), 'colors': list(c.colors)} for c in fan.cones]


def document_from_data(sd: SphericalData, fans: Sequence[tuple[str, ColoredFan]] = ()) -> SphericalDataDocument:
    """Document describing ``sd`` (valuation cone by its canonical halfspaces) and ``fans``."""
    return SphericalDataDocument(
        sd.dim,
        sd.vcone.halfspaces,
        tuple((c.name, c.rho) for c in sd.colors),
        sd.character_basis,
        tuple(
            (name, FanDocument(tuple(ConeSpec(cc.cone.rays, tuple(sorted(cc.colors))) for cc in fan.cones)))
            for name, fan in fans
        ),
    )


def dumps(obj: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, indent=2, ensure_ascii=False)


__all__ = [
    'DOCUMENT_KINDS',
    'ConeSpec',
    'FanDocument',
    'SphericalDataDocument',
    'PointsDocument',
    'CommandScriptDocument',
    'Document',
    'parse_document',
    'load_document',
    'serialize_document',
    'document_from_data',
    'decode_rational',
    'decode_series',
    'encode_rational',
    'encode_vec',
    'encode_vec_list',
    'encode_value',
    'encode_series',
    'encode_point',
    'encode_cone',
    'encode_colored_cone',
    'encode_fan',
    'encode_extended_point',
    'encode_compactified',
    'dumps',
    'STDIN_SOURCE',
]
