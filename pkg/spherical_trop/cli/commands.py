"""
Author:
    Inspyre Softworks

Project:
    SphericalTrop

File:
    spherical_trop/cli/commands.py

Description:
    Implementations of the CLI subcommands. Each takes the parsed arguments and a
    :class:`RunContext` and returns a :class:`~spherical_trop.cli.reports.Report`.

"""
from __future__ import annotations

import argparse
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Final, Iterable, Sequence, TypeVar

from spherical_trop.cli.documents import (
    KIND_FAN,
    KIND_POINTS,
    KIND_SPHERICAL_DATA,
    STDIN_SOURCE,
    FanDocument,
    PointsDocument,
    SphericalDataDocument,
    document_from_data,
    encode_colored_cone,
    encode_compactified,
    encode_cone,
    encode_extended_point,
    encode_fan,
    encode_point,
    encode_value,
    encode_vec,
    load_document,
    serialize_document,
)
from spherical_trop.cli.reports import FORMAT_JSON, Report
from spherical_trop.colored_fan import (
    ColoredCone,
    ColoredFan,
    FanReport,
    SphericalData,
    check_star,
    colored_faces,
    star_fan,
    validate_colored_fan,
    validate_spherical_data,
)
from spherical_trop.compactify import certify_limit, compactify_cone, limit_of_ray, p_image
from spherical_trop.errors import (
    DimensionMismatchError,
    DocumentError,
    DomainError,
    ParseError,
    SamplingInstabilityError,
    UnknownEntryError,
    UsageError,
    ZeroCoordinateError,
)
from spherical_trop.polyhedral import RatCone, RatVec, face_lattice, format_vec
from spherical_trop.puiseux import LaurentPolynomial, PuiseuxPoint
from spherical_trop.registry import RegistryEntry, registry_get
from spherical_trop.tropicalize import (
    Family,
    SeminormSample,
    parse_mu,
    retract_point,
    retraction_breakpoints,
    retraction_value,
    trp_generic,
    trp_toric_extended,
    trp_torus,
)

log = logging.getLogger(__name__)

MODE_TORUS: Final[str] = 'torus'
MODE_EXTENDED: Final[str] = 'extended'
MODE_GENERIC: Final[str] = 'generic'
TROP_MODES: Final[tuple[str, ...]] = (MODE_TORUS, MODE_EXTENDED, MODE_GENERIC)

EXAMPLE_LISTING: Final[tuple[str, ...]] = ('torus(2)', 'sl2_h', 'gl2')

# Failures of a single point in a multi-point `trop` run.
POINT_ERRORS: Final[tuple[type[Exception], ...]] = (
    DimensionMismatchError,
    DomainError,
    SamplingInstabilityError,
    ZeroCoordinateError,
)

T = TypeVar('T')
R = TypeVar('R')


@dataclass(frozen=True, slots=True)
class RunContext:
    """Options shared by every subcommand, after merging flags over the environment."""

    fmt: str
    samples: int
    seed: int
    entry_range: int
    jobs: int = 1

    def map(self, fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
        """Apply ``fn`` to ``items``, in a thread pool when ``jobs > 1``; results keep input order."""
        items = list(items)
        if self.jobs <= 1 or len(items) <= 1:
            return [fn(item) for item in items]
        with ThreadPoolExecutor(max_workers=self.jobs) as pool:
            return list(pool.map(fn, items))


@dataclass(frozen=True, slots=True)
class DataSource:
    """Spherical data with its named fans, read from the registry or a document."""

    label: str
    sd: SphericalData
    fans: tuple[tuple[str, ColoredFan], ...]
    entry: RegistryEntry | None = None

    @property
    def fan_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.fans)


# ---------------------------------------------------------------------------
# Argument readers
# ---------------------------------------------------------------------------

def parse_vector(text: str, dim: int | None = None, what: str = 'vector') -> RatVec:
    """
    Read a vector such as ``'1,0'``, ``'(1, -1/2)'`` or ``'[0, 1]'``.

    Raises:
        ParseError:
            If an entry is not a rational number.

        DimensionMismatchError:
            If ``dim`` is given and the length differs.
    """
    body = text.strip().strip('()[]').strip()
    items = [item.strip() for item in body.split(',')] if body else []
    try:
        values = tuple(Fraction(item) for item in items)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f'cannot read {what} {text!r}') from None
    if dim is not None and len(values) != dim:
        raise DimensionMismatchError(what, dim, len(values))
    return values


def parse_vectors(text: str | None, dim: int, what: str = 'rays') -> tuple[RatVec, ...]:
    """Read ``;``-separated vectors such as ``'1,0; 1,1'``; an empty string is no vectors."""
    if not text or not text.strip():
        return ()
    return tuple(parse_vector(part, dim, what) for part in text.split(';'))


def parse_names(text: str | None) -> tuple[str, ...]:
    if not text:
        return ()
    return tuple(name.strip() for name in text.split(',') if name.strip())


def _is_registry_name(text: str) -> bool:
    try:
        registry_get(text)
    except UnknownEntryError:
        return False
    return True


def resolve_data(spec: str) -> DataSource:
    """
    Read spherical data from a registry name, a document path or ``'-'`` (standard input).

    Raises:
        DocumentError:
            If the document cannot be read or is not spherical data.
    """
    if spec != STDIN_SOURCE and _is_registry_name(spec):
        entry = registry_get(spec)
        return DataSource(entry.name, entry.sd, entry.fans, entry)
    doc = load_document(spec)
    if not isinstance(doc, SphericalDataDocument):
        raise DocumentError(f'expected a {KIND_SPHERICAL_DATA} document', source=spec)
    log.debug('read spherical data of rank %d from %s', doc.dim, spec)
    return DataSource(spec, doc.to_spherical_data(), tuple(doc.named_fans().items()))


def resolve_fan(source: DataSource, spec: str) -> ColoredFan:
    """
    Find a fan by name in ``source``, or read a fan document from a path.

    Raises:
        UnknownEntryError:
            If ``spec`` is neither a fan name nor an existing path.
    """
    for name, fan in source.fans:
        if name == spec:
            return fan
    if spec != STDIN_SOURCE and not Path(spec).exists():
        raise UnknownEntryError(f'{source.label} has no fan {spec!r}; known fans: {list(source.fan_names)}')
    doc = load_document(spec)
    if not isinstance(doc, FanDocument):
        raise DocumentError(f'expected a {KIND_FAN} document', source=spec)
    return doc.to_fan(source.sd.dim)


def _optional_data(args: argparse.Namespace) -> DataSource | None:
    return resolve_data(args.data) if getattr(args, 'data', None) else None


def _require_data(args: argparse.Namespace, command: str) -> DataSource:
    source = _optional_data(args)
    if source is None:
        raise UsageError(f'{command} needs --data')
    return source


def _cone_from_args(args: argparse.Namespace, source: DataSource | None) -> ColoredCone:
    rays_text = args.rays or ''
    if source is not None:
        dim = source.sd.dim
    else:
        first = rays_text.split(';')[0] if rays_text.strip() else ''
        if not first:
            raise UsageError('give --rays, or --data to fix the rank of the zero cone')
        dim = len(parse_vector(first))
    colors = parse_names(getattr(args, 'colors', None))
    if colors and source is None:
        raise UsageError('colors need --data')
    return ColoredCone.of(dim, parse_vectors(rays_text, dim), colors)


def _read_points(args: argparse.Namespace) -> list[PuiseuxPoint]:
    points = [PuiseuxPoint.parse(text) for text in args.point or ()]
    if args.points:
        doc = load_document(args.points)
        if not isinstance(doc, PointsDocument):
            raise DocumentError(f'expected a {KIND_POINTS} document', source=args.points)
        points.extend(doc.entries)
    if not points:
        raise UsageError('give at least one --point or a --points document')
    return points


def _flags(values: dict[str, bool]) -> str:
    return ' '.join(name for name, ok in values.items() if not ok) or 'ok'


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _fan_result(name: str, fan: ColoredFan, report: FanReport) -> dict[str, Any]:
    return {
        'name': name,
        'ok': report.ok,
        'face_closed': report.face_closed,
        'unique': report.unique,
        'cones_valid': report.cones_valid,
        'missing_faces': [
            {'member': i, 'face': encode_colored_cone(face)} for i, face in report.missing_faces
        ],
        'overlaps': [[i, j] for i, j in report.overlaps],
        'cones': [
            {
                'member': i,
                'cone': encode_colored_cone(cc),
                'ok': r.ok,
                'cc1': r.cc1,
                'cc2': r.cc2,
                'cc3': r.cc3,
                'strictly_convex': r.strictly_convex,
            }
            for i, (cc, r) in enumerate(zip(fan.cones, report.cone_reports))
        ],
    }


def _fan_findings(name: str, fan: ColoredFan, report: FanReport) -> list[str]:
    if report.ok:
        return [f'{name}: valid colored fan ({len(fan)} cones)']
    lines = []
    for i, face in report.missing_faces:
        lines.append(f'{name}: face closure violated: member {i} lacks colored face {face.label()}')
    for i, j in report.overlaps:
        lines.append(f'{name}: uniqueness violated: members {i} and {j} overlap inside the valuation cone')
    for i, r in enumerate(report.cone_reports):
        if not r.ok:
            lines.append(f'{name}: member {i} fails {", ".join(f.upper() for f in r.failures())}')
    return lines


def run_validate(args: argparse.Namespace, ctx: RunContext) -> Report:
    """Validate the spherical data and one fan, or every named fan when none is given."""
    source = _require_data(args, 'validate')
    sd_report = validate_spherical_data(source.sd)
    if args.fan:
        fans = [(args.fan, resolve_fan(source, args.fan))]
    else:
        fans = list(source.fans)
    reports = ctx.map(lambda item: validate_colored_fan(source.sd, item[1]), fans)

    rows = []
    lines = []
    if not sd_report.ok:
        lines.append(f'{source.label}: invalid spherical data: {_flags({"spans": sd_report.spans, "cosimplicial": sd_report.cosimplicial})}')
    for (name, fan), report in zip(fans, reports):
        for i, (cc, r) in enumerate(zip(fan.cones, report.cone_reports)):
            rows.append((name, str(i), cc.label(), _flags({'CC1': r.cc1, 'CC2': r.cc2, 'CC3': r.cc3, 'convex': r.strictly_convex})))
        lines.extend(_fan_findings(name, fan, report))
    ok = sd_report.ok and all(r.ok for r in reports)
    result = {
        'data': source.label,
        'spherical_data': {'ok': sd_report.ok, 'spans': sd_report.spans, 'cosimplicial': sd_report.cosimplicial},
        'fans': [_fan_result(name, fan, r) for (name, fan), r in zip(fans, reports)],
    }
    return Report('validate', result, tuple(lines), ('fan', 'member', 'colored cone', 'conditions'), tuple(rows), ok=ok)


def run_faces(args: argparse.Namespace, ctx: RunContext) -> Report:
    """List the colored faces of a colored cone, or every face of a cone without ``--data``."""
    source = _optional_data(args)
    cc = _cone_from_args(args, source)
    if source is None or args.all:
        faces = tuple(ColoredCone(f) for f in face_lattice(cc.cone))
        colored = False
    else:
        faces = colored_faces(source.sd, cc)
        colored = True
    rows = tuple((str(f.cone.linear_dim), format_vecs(f.cone.rays), ', '.join(sorted(f.colors))) for f in faces)
    result = {'cone': encode_colored_cone(cc), 'colored': colored, 'faces': [encode_colored_cone(f) for f in faces]}
    return Report('faces', result, (f'{len(faces)} faces',), ('dim', 'rays', 'colors'), rows)


def format_vecs(vs: Sequence[RatVec]) -> str:
    return ' '.join(format_vec(v) for v in vs) or '0'


def run_star(args: argparse.Namespace, ctx: RunContext) -> Report:
    """Quotient spherical data and colored fan of the orbit closure attached to ``tau``."""
    source = _require_data(args, 'star')
    fan = resolve_fan(source, args.fan)
    tau = ColoredCone.of(source.sd.dim, parse_vectors(args.tau_rays, source.sd.dim, 'tau ray'), parse_names(args.tau_colors))
    dominant = parse_names(args.dominant_colors)
    new_sd, new_fan, q = star_fan(source.sd, fan, tau, dominant)
    report = validate_colored_fan(new_sd, new_fan)
    result = {
        'tau': encode_colored_cone(tau),
        'quotient': [encode_vec(row) for row in q.matrix],
        'spherical_data': serialize_document(document_from_data(new_sd)),
        'fan': encode_fan(new_fan),
        'valid': report.ok,
    }
    rows = tuple((cc.label(),) for cc in new_fan.cones)
    lines = (
        f'star of {tau.label()}: rank {new_sd.dim}, valuation cone {new_sd.vcone}',
        f'colors: {", ".join(f"{c.name} -> {format_vec(c.rho)}" for c in new_sd.colors) or "none"}',
        f'valid colored fan: {str(report.ok).lower()}',
    )
    return Report('star', result, lines, ('colored cone',), rows, title=f'Star({tau.label()})')


def run_check_star(args: argparse.Namespace, ctx: RunContext) -> Report:
    """Whether every cone of the fan lies in the valuation cone."""
    source = _require_data(args, 'check-star')
    fan = resolve_fan(source, args.fan)
    holds = check_star(source.sd, fan)
    outside = [cc for cc in fan.cones if not all(source.sd.vcone.contains(g) for g in cc.cone.generators)]
    result = {'fan': args.fan, 'star': holds, 'outside': [encode_colored_cone(cc) for cc in outside]}
    return Report('check-star', result, (str(holds).lower(),))


def _per_point(compute: Callable[[PuiseuxPoint], dict[str, Any]]) -> Callable[[PuiseuxPoint], dict[str, Any]]:
    def guarded(x: PuiseuxPoint) -> dict[str, Any]:
        try:
            return compute(x)
        except POINT_ERRORS as exc:
            log.warning('trop failed at %s: %s', x, exc)
            return {
                'point': encode_point(x),
                'error': {'type': type(exc).__name__, 'message': str(exc)},
                '_text': f'error: {exc}',
                '_exc': exc,
            }

    return guarded


def run_trop(args: argparse.Namespace, ctx: RunContext) -> Report:
    """
    Tropicalize points over Puiseux series (torus, extended toric or generic).

    A point that fails gets an ``error`` entry in place of its ``value`` and the report
    is marked failed. When every point fails the first error is raised.
    """
    points = _read_points(args)
    mode = args.mode or (MODE_GENERIC if args.entry else MODE_TORUS)

    if mode == MODE_GENERIC:
        if not args.entry:
            raise UsageError('generic tropicalization needs --entry')
        entry = registry_get(args.entry)

        def compute(x: PuiseuxPoint) -> dict[str, Any]:
            v = trp_generic(entry, x, ctx.samples, ctx.seed, ctx.entry_range, args.check_stability)
            return {'point': encode_point(x), 'value': encode_vec(v), '_text': format_vec(v)}
    elif mode == MODE_EXTENDED:
        if not args.fan:
            raise UsageError('extended tropicalization needs --fan')
        source = resolve_data(args.data or args.entry or f'torus({points[0].dim})')
        fan = resolve_fan(source, args.fan)
        chart = RatCone.from_rays(source.sd.dim, parse_vectors(args.chart, source.sd.dim, 'chart ray')) if args.chart else None

        def compute(x: PuiseuxPoint) -> dict[str, Any]:
            p = trp_toric_extended(fan, x, chart)
            return {'point': encode_point(x), 'value': encode_extended_point(p), '_text': str(p)}
    else:
        def compute(x: PuiseuxPoint) -> dict[str, Any]:
            v = trp_torus(x)
            return {'point': encode_point(x), 'value': encode_vec(v), '_text': format_vec(v)}

    outcomes = ctx.map(_per_point(compute), points)
    failures = [o.pop('_exc') for o in outcomes if '_exc' in o]
    if len(failures) == len(outcomes):
        raise failures[0]
    lines = tuple(f'{x} -> {o.pop("_text")}' for x, o in zip(points, outcomes))
    result: dict[str, Any] = {'mode': mode, 'results': outcomes}
    if mode == MODE_GENERIC:
        result.update(entry=args.entry, samples=ctx.samples, seed=ctx.seed)
    return Report('trop', result, lines, ok=not failures)


def run_retract(args: argparse.Namespace, ctx: RunContext) -> Report:
    """Evaluate a seminorm family member at ``(mu, f, x)``."""
    x = PuiseuxPoint.parse(args.point)
    f = LaurentPolynomial.parse(args.f, x.dim)
    family = Family(args.family)
    try:
        mu = parse_mu(args.mu)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    value = retraction_value(SeminormSample(mu, x, family), f)
    result: dict[str, Any] = {
        'family': family.value,
        'mu': encode_value(mu),
        'f': str(f),
        'point': encode_point(x),
        'value': encode_value(value),
    }
    lines = [f'{family.value} seminorm at mu={mu}: val {f} = {value}']
    if x.is_torus_point:
        projected = retract_point(x)
        result['retraction'] = encode_vec(projected.weights)
        lines.append(f'retraction of the point: {projected}')
    headers: tuple[str, ...] = ()
    rows: tuple[tuple[str, ...], ...] = ()
    if args.curve:
        pieces = retraction_breakpoints(f, x, family)
        result['pieces'] = [{'intercept': encode_value(a), 'slope': s} for a, s in pieces]
        headers = ('intercept', 'slope')
        rows = tuple((str(a), str(s)) for a, s in pieces)
    return Report('retract', result, tuple(lines), headers, rows, title='lower envelope of mu -> intercept + slope * mu')


def run_compactify(args: argparse.Namespace, ctx: RunContext) -> Report:
    """Strata of the canonical compactification of a cone (colored with ``--data``)."""
    source = _optional_data(args)
    cc = _cone_from_args(args, source)
    closure = compactify_cone(cc, source.sd if source is not None else None)
    rows = tuple((face.label(), str(piece)) for face, piece in closure.strata)
    result = encode_compactified(closure)
    result['count'] = len(closure)
    return Report('compactify', result, (f'{len(closure)} strata ({closure.mode})',), ('face', 'piece'), rows)


def run_p_image(args: argparse.Namespace, ctx: RunContext) -> Report:
    """Image of the retraction in the tropicalization of the embedding given by a fan."""
    source = _require_data(args, 'p-image')
    fan = resolve_fan(source, args.fan)
    image = p_image(source.sd, fan)
    result = {
        'fan': args.fan,
        'satisfies_star': image.satisfies_star,
        'strata': [
            {'face': encode_colored_cone(face), 'pieces': [encode_cone(p) for p in pieces]}
            for face, pieces in image.strata
        ],
        'per_cone': [
            {'cone': encode_colored_cone(cc), 'closure': encode_compactified(closure)}
            for cc, closure in image.per_cone
        ],
    }
    rows = tuple((face.label(), ' | '.join(str(p) for p in pieces)) for face, pieces in image.strata)
    lines = (f'(*) holds: {str(image.satisfies_star).lower()}', f'{len(image)} strata')
    return Report('p-image', result, lines, ('colored face', 'pieces'), rows)


def run_limits(args: argparse.Namespace, ctx: RunContext) -> Report:
    """Limit of the ray ``v0 + s * w`` in the compactification of a cone."""
    source = _optional_data(args)
    cc = _cone_from_args(args, source)
    dim = cc.cone.dim
    v0 = parse_vector(args.v0, dim, 'v0')
    w = parse_vector(args.w, dim, 'w')
    closure = compactify_cone(cc, source.sd if source is not None else None)
    point = limit_of_ray(closure, v0, w)
    certified = certify_limit(point, v0, w)
    result = {'v0': encode_vec(v0), 'w': encode_vec(w), 'limit': encode_extended_point(point), 'certified': certified}
    lines = (f'limit: {point}', f'certified: {str(certified).lower()}')
    return Report('limits', result, lines, ok=certified)


def run_examples(args: argparse.Namespace, ctx: RunContext) -> Report:
    """List the registry, or describe one entry (as a spherical data document with ``--format json``)."""
    if not args.name:
        entries = [registry_get(name) for name in EXAMPLE_LISTING]
        rows = tuple(
            (name, str(e.sd.dim), ', '.join(c.name for c in e.sd.colors), ', '.join(e.fan_names))
            for name, e in zip(EXAMPLE_LISTING, entries)
        )
        result = {
            'entries': [
                {'name': name, 'rank': e.sd.dim, 'colors': [c.name for c in e.sd.colors], 'fans': list(e.fan_names)}
                for name, e in zip(EXAMPLE_LISTING, entries)
            ],
        }
        return Report('examples', result, ('torus(n) is available for every n >= 1',), ('name', 'rank', 'colors', 'fans'), rows)

    entry = registry_get(args.name)
    doc = serialize_document(document_from_data(entry.sd, entry.fans))
    if ctx.fmt == FORMAT_JSON:
        return Report('examples', doc, bare=True)
    rows = tuple(
        (name, str(i), cc.label())
        for name, fan in entry.fans
        for i, cc in enumerate(fan.cones)
    )
    lines = (
        f'{entry.name}: rank {entry.sd.dim}, basis {", ".join(entry.sd.character_basis)}',
        f'valuation cone: {entry.sd.vcone}',
        f'colors: {", ".join(f"{c.name} -> {format_vec(c.rho)}" for c in entry.sd.colors) or "none"}',
        f'semi-invariants: {", ".join(entry.characters)}',
    )
    return Report('examples', doc, lines, ('fan', 'member', 'colored cone'), rows)


def run_plot(args: argparse.Namespace, ctx: RunContext) -> Report:
    """Write an SVG picture of a rank-2 colored fan."""
    from spherical_trop.cli.plot import plot_fan

    source = _require_data(args, 'plot')
    fan = resolve_fan(source, args.fan)
    if source.sd.dim != 2:
        raise UsageError(f'plot draws rank-2 fans; {source.label} has rank {source.sd.dim}')
    image = None if args.no_image else p_image(source.sd, fan)
    path = plot_fan(source.sd, fan, Path(args.out), title=f'{source.label}: {args.fan}', image=image)
    return Report('plot', {'fan': args.fan, 'out': str(path)}, (f'wrote {path}',))


__all__ = [
    'TROP_MODES',
    'RunContext',
    'DataSource',
    'parse_vector',
    'parse_vectors',
    'parse_names',
    'resolve_data',
    'resolve_fan',
    'run_validate',
    'run_faces',
    'run_star',
    'run_check_star',
    'run_trop',
    'run_retract',
    'run_compactify',
    'run_p_image',
    'run_limits',
    'run_examples',
    'run_plot',
]
