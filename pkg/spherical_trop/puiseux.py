"""
Author:
    Inspyre Softworks

Project:
    SphericalTrop

File:
    spherical_trop/puiseux.py

Description:
    Truncated Puiseux series over the rationals, points with series coordinates, Laurent
    polynomials with rational coefficients, and the u-adic valuation.

    Valuations are additive (the least exponent); the constant field is trivially valued,
    so every nonzero rational has valuation 0 and the zero series has valuation
    :data:`INFINITY`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations, permutations
from typing import Iterable, Mapping, Sequence, Union

import sympy
from sympy.parsing.sympy_parser import convert_xor, implicit_multiplication, parse_expr, standard_transformations

from spherical_trop.errors import DimensionMismatchError, DomainError, ParseError

_TRANSFORMATIONS = standard_transformations + (implicit_multiplication, convert_xor)
_U = sympy.Symbol('u')


class Infinity:
    """
    The value ``+inf`` of the additive valuation.

    A singleton: greater than every rational, absorbing under addition.
    """

    __slots__ = ()
    _instance: Infinity | None = None

    def __new__(cls) -> Infinity:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return 'INFINITY'

    def __str__(self) -> str:
        return 'inf'

    def __hash__(self) -> int:
        return hash('spherical_trop.INFINITY')

    def __eq__(self, other: object) -> bool:
        return other is self

    def __lt__(self, other: object) -> bool:
        return False

    def __le__(self, other: object) -> bool:
        return other is self

    def __gt__(self, other: object) -> bool:
        return other is not self

    def __ge__(self, other: object) -> bool:
        return True

    def __add__(self, other: object) -> Infinity:
        return self

    __radd__ = __add__

    def __reduce__(self) -> str:
        return 'INFINITY'


INFINITY = Infinity()

AdditiveVal = Union[Fraction, Infinity]


def val_min(values: Iterable[AdditiveVal]) -> AdditiveVal:
    """Minimum of additive valuations; the empty minimum is ``INFINITY``."""
    return min(values, default=INFINITY)


def _as_fraction(value: int | Fraction | str) -> Fraction:
    if isinstance(value, (bool, float)):
        raise TypeError(f'expected an exact rational, got {type(value).__name__}')
    return Fraction(value)


def _parse_sympy(text: str, names: Mapping[str, sympy.Symbol]) -> sympy.Expr:
    try:
        expr = parse_expr(text, local_dict=dict(names), transformations=_TRANSFORMATIONS)
    except Exception as exc:
        raise ParseError(f'cannot parse {text!r}: {exc}') from None
    return sympy.expand(expr)


def _sympy_fraction(x: sympy.Expr, text: str) -> Fraction:
    if not getattr(x, 'is_Rational', False):
        raise ParseError(f'{text!r}: {x} is not an exact rational')
    return Fraction(int(x.p), int(x.q))


def _format_exponent(name: str, e: Fraction) -> str:
    if e == 1:
        return name
    if e.denominator == 1 and e > 0:
        return f'{name}^{e}'
    return f'{name}^({e})'


def _format_terms(pieces: list[tuple[str, Fraction]]) -> str:
    if not pieces:
        return '0'
    out = []
    for i, (mono, c) in enumerate(pieces):
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f'{mag}*{mono}'
        if i == 0:
            out.append(f'-{body}' if c < 0 else body)
        else:
            out.append(f' - {body}' if c < 0 else f' + {body}')
    return ''.join(out)


@dataclass(frozen=True, slots=True)
class PuiseuxSeries:
    """
    A finite Puiseux series ``sum(c * u^e)`` with rational exponents and coefficients.

    ``terms`` is a tuple of ``(exponent, coefficient)`` pairs with strictly increasing
    exponents and nonzero coefficients; the zero series has no terms. Build instances with
    :meth:`from_terms`, :meth:`parse` or arithmetic.
    """

    terms: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self) -> None:
        exps = [e for e, _ in self.terms]
        if any(b <= a for a, b in zip(exps, exps[1:])):
            raise ValueError('series exponents must be strictly increasing')
        if any(c == 0 for _, c in self.terms):
            raise ValueError('series coefficients must be nonzero')

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int | Fraction | str, int | Fraction | str]]) -> PuiseuxSeries:
        """Collect ``(exponent, coefficient)`` pairs, merging equal exponents and dropping zeros."""
        acc: dict[Fraction, Fraction] = {}
        for e, c in terms:
            e, c = _as_fraction(e), _as_fraction(c)
            acc[e] = acc.get(e, Fraction(0)) + c
        return cls(tuple(sorted((e, c) for e, c in acc.items() if c != 0)))

    @classmethod
    def constant(cls, c: int | Fraction | str) -> PuiseuxSeries:
        return cls.from_terms([(0, c)])

    @classmethod
    def monomial(cls, c: int | Fraction | str, e: int | Fraction | str) -> PuiseuxSeries:
        return cls.from_terms([(e, c)])

    @classmethod
    def parse(cls, text: str) -> PuiseuxSeries:
        """
        Parse text such as ``'u^2 + 3*u^5'`` or ``'u^(-1/2) + 1'``.

        Raises:
            ParseError:
                If the text is not a finite sum of rational multiples of powers of ``u``.
        """
        expr = _parse_sympy(text, {'u': _U})
        terms = []
        for term in sympy.Add.make_args(expr):
            coeff, exponent = term.as_coeff_exponent(_U)
            terms.append((_sympy_fraction(exponent, text), _sympy_fraction(coeff, text)))
        return cls.from_terms(terms)

    @classmethod
    def coerce(cls, value: PuiseuxSeries | int | Fraction | str) -> PuiseuxSeries:
        if isinstance(value, PuiseuxSeries):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        return cls.constant(value)

    # -- valuation ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def val(self) -> AdditiveVal:
        """Least exponent, or ``INFINITY`` for the zero series."""
        return self.terms[0][0] if self.terms else INFINITY

    @property
    def leading_coefficient(self) -> Fraction:
        return self.terms[0][1] if self.terms else Fraction(0)

    @property
    def denominator(self) -> int:
        """Common denominator of the exponents."""
        return math.lcm(*(e.denominator for e, _ in self.terms)) if self.terms else 1

    # -- arithmetic -----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __neg__(self) -> PuiseuxSeries:
        return PuiseuxSeries(tuple((e, -c) for e, c in self.terms))

    def __add__(self, other: PuiseuxSeries | int | Fraction) -> PuiseuxSeries:
        other = PuiseuxSeries.coerce(other)
        return PuiseuxSeries.from_terms(self.terms + other.terms)

    __radd__ = __add__

    def __sub__(self, other: PuiseuxSeries | int | Fraction) -> PuiseuxSeries:
        return self + (-PuiseuxSeries.coerce(other))

    def __rsub__(self, other: PuiseuxSeries | int | Fraction) -> PuiseuxSeries:
        return PuiseuxSeries.coerce(other) - self

    def __mul__(self, other: PuiseuxSeries | int | Fraction) -> PuiseuxSeries:
        other = PuiseuxSeries.coerce(other)
        return PuiseuxSeries.from_terms(
            (e1 + e2, c1 * c2) for e1, c1 in self.terms for e2, c2 in other.terms
        )

    __rmul__ = __mul__

    def __pow__(self, n: int) -> PuiseuxSeries:
        """
        Integer power.

        Raises:
            DomainError:
                For a negative power of a series that is not a monomial (its inverse is not
                a finite series).
        """
        if n >= 0:
            return reduce(lambda acc, _: acc * self, range(n), PuiseuxSeries.constant(1))
        if len(self.terms) != 1:
            raise DomainError(f'cannot invert {self} as a finite series')
        (e, c), = self.terms
        return PuiseuxSeries.monomial(Fraction(1) / c ** -n, e * n)

    def __str__(self) -> str:
        return _format_terms([('' if e == 0 else _format_exponent('u', e), c) for e, c in self.terms])


SeriesLike = Union[PuiseuxSeries, int, Fraction, str]


def val(f: SeriesLike) -> AdditiveVal:
    """Additive valuation of a series (or of a constant, which is 0 unless it is 0)."""
    return PuiseuxSeries.coerce(f).val()


def _split_top(text: str) -> list[str]:
    """Split on commas that are not nested inside brackets."""
    items, depth, current = [], 0, []
    for ch in text:
        if ch in '([':
            depth += 1
        elif ch in ')]':
            depth -= 1
        if ch == ',' and depth == 0:
            items.append(''.join(current).strip())
            current = []
        else:
            current.append(ch)
    tail = ''.join(current).strip()
    if tail or items:
        items.append(tail)
    return items


def _strip(text: str, opening: str, closing: str) -> str | None:
    text = text.strip()
    if text.startswith(opening) and text.endswith(closing):
        return text[len(opening):-len(closing)]
    return None


@dataclass(frozen=True, slots=True)
class PuiseuxPoint:
    """
    A point with Puiseux series coordinates.

    Matrices are stored flattened in row-major order.
    """

    coords: tuple[PuiseuxSeries, ...]

    @classmethod
    def of(cls, *coords: SeriesLike) -> PuiseuxPoint:
        return cls(tuple(PuiseuxSeries.coerce(c) for c in coords))

    @classmethod
    def parse(cls, text: str) -> PuiseuxPoint:
        """
        Parse ``'(u^2, u^3)'``, ``'[[u, 0], [0, 1]]'`` (row-major) or ``'diag(u, 1)'``.

        Raises:
            ParseError:
                If the shape or an entry cannot be read.
        """
        text = text.strip()
        inner = _strip(text, 'diag(', ')')
        if inner is not None:
            items = _split_top(inner)
            n = len(items)
            flat = [items[i] if i == j else '0' for i in range(n) for j in range(n)]
            return cls.of(*flat)
        inner = _strip(text, '[', ']')
        if inner is not None and inner.strip().startswith('['):
            rows = []
            for row_text in _split_top(inner):
                row_inner = _strip(row_text, '[', ']')
                if row_inner is None:
                    raise ParseError(f'matrix row {row_text!r} is not bracketed')
                rows.append(_split_top(row_inner))
            if len({len(r) for r in rows}) != 1:
                raise ParseError(f'matrix rows in {text!r} have different lengths')
            return cls.of(*(item for row in rows for item in row))
        if inner is not None:
            return cls.of(*_split_top(inner))
        inner = _strip(text, '(', ')')
        if inner is not None and ',' in inner:
            return cls.of(*_split_top(inner))
        return cls.of(text)

    def __len__(self) -> int:
        return len(self.coords)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def valuations(self) -> tuple[AdditiveVal, ...]:
        return tuple(c.val() for c in self.coords)

    @property
    def zero_pattern(self) -> tuple[bool, ...]:
        return tuple(c.is_zero for c in self.coords)

    @property
    def is_torus_point(self) -> bool:
        return not any(self.zero_pattern)

    def matrix(self, n: int) -> list[list[PuiseuxSeries]]:
        if self.dim != n * n:
            raise DimensionMismatchError('matrix point', n * n, self.dim)
        return [list(self.coords[i * n:(i + 1) * n]) for i in range(n)]

    def __str__(self) -> str:
        return '(' + ', '.join(str(c) for c in self.coords) + ')'


Exponent = tuple[int, ...]


@dataclass(frozen=True, slots=True)
class LaurentPolynomial:
    """
    Laurent polynomial in ``t1..tn`` with rational coefficients.

    ``terms`` holds ``(exponent, coefficient)`` pairs sorted by exponent, coefficients nonzero.
    """

    nvars: int
    terms: tuple[tuple[Exponent, Fraction], ...] = ()

    def __post_init__(self) -> None:
        for exps, c in self.terms:
            if len(exps) != self.nvars:
                raise DimensionMismatchError('exponent vector', self.nvars, len(exps))
            if c == 0:
                raise ValueError('Laurent coefficients must be nonzero')

    @classmethod
    def from_terms(cls, nvars: int, terms: Iterable[tuple[Sequence[int], int | Fraction | str]]) -> LaurentPolynomial:
        acc: dict[Exponent, Fraction] = {}
        for exps, c in terms:
            key = tuple(int(e) for e in exps)
            acc[key] = acc.get(key, Fraction(0)) + _as_fraction(c)
        return cls(nvars, tuple(sorted((k, c) for k, c in acc.items() if c != 0)))

    @classmethod
    def variable(cls, nvars: int, i: int) -> LaurentPolynomial:
        return cls.from_terms(nvars, [(tuple(1 if j == i else 0 for j in range(nvars)), 1)])

    @classmethod
    def constant(cls, nvars: int, c: int | Fraction) -> LaurentPolynomial:
        return cls.from_terms(nvars, [((0,) * nvars, c)])

    @staticmethod
    def variable_names(nvars: int) -> list[str]:
        return [f't{i + 1}' for i in range(nvars)]

    @classmethod
    def parse(cls, text: str, nvars: int) -> LaurentPolynomial:
        """
        Parse text such as ``'t1 + t2'`` or ``'2*t1^-1*t2^3 - 1/2'``.

        With a single variable, ``t`` is accepted as a synonym of ``t1``.

        Raises:
            ParseError:
                If a term is not a rational multiple of a Laurent monomial.
        """
        symbols = [sympy.Symbol(name) for name in cls.variable_names(nvars)]
        names = {str(s): s for s in symbols}
        if nvars == 1:
            names['t'] = symbols[0]
        expr = _parse_sympy(text, names)
        terms = []
        for term in sympy.Add.make_args(expr):
            coeff, rest = term.as_coeff_Mul()
            powers = {} if rest == 1 else rest.as_powers_dict()
            exps = [0] * nvars
            for base, power in powers.items():
                if base not in symbols or not getattr(power, 'is_Integer', False):
                    raise ParseError(f'{text!r}: {term} is not a Laurent monomial in {", ".join(names)}')
                exps[symbols.index(base)] += int(power)
            terms.append((tuple(exps), _sympy_fraction(coeff, text)))
        return cls.from_terms(nvars, terms)

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: LaurentPolynomial) -> None:
        if other.nvars != self.nvars:
            raise DimensionMismatchError('Laurent polynomial', self.nvars, other.nvars)

    def __add__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        self._check(other)
        return LaurentPolynomial.from_terms(self.nvars, self.terms + other.terms)

    def __neg__(self) -> LaurentPolynomial:
        return LaurentPolynomial(self.nvars, tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        return self + (-other)

    def __mul__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        self._check(other)
        return LaurentPolynomial.from_terms(
            self.nvars,
            [(tuple(a + b for a, b in zip(k1, k2)), c1 * c2) for k1, c1 in self.terms for k2, c2 in other.terms],
        )

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def shifted(self) -> tuple[Exponent, LaurentPolynomial]:
        """
        Clear negative exponents.

        Returns:
            tuple[Exponent, LaurentPolynomial]:
                ``(R, g)`` with ``R >= 0`` componentwise, ``g = t^R * self`` a polynomial, and
                ``R`` the least such shift.
        """
        shift = tuple(
            max(0, -min((k[i] for k, _ in self.terms), default=0)) for i in range(self.nvars)
        )
        return shift, LaurentPolynomial(
            self.nvars, tuple((tuple(a + s for a, s in zip(k, shift)), c) for k, c in self.terms)
        )

    def _check_point(self, x: PuiseuxPoint) -> None:
        if x.dim != self.nvars:
            raise DimensionMismatchError('point', self.nvars, x.dim)

    def evaluate(self, x: PuiseuxPoint) -> PuiseuxSeries:
        """
        Value at ``x``.

        Raises:
            DomainError:
                If a negative power of a non-monomial (or zero) coordinate is needed.
        """
        self._check_point(x)
        total = PuiseuxSeries()
        for exps, c in self.terms:
            term = PuiseuxSeries.constant(c)
            for coord, e in zip(x.coords, exps):
                if e < 0 and coord.is_zero:
                    raise DomainError(f'{self} has a pole at {x}')
                term = term * coord ** e
            total = total + term
        return total

    def valuation_at(self, x: PuiseuxPoint) -> AdditiveVal:
        """
        ``val(self(x))`` for a point with nonzero coordinates wherever a pole occurs.

        Computed as ``val((t^R f)(x)) - <R, val x>`` so no series is ever inverted.
        """
        self._check_point(x)
        shift, poly = self.shifted()
        value = poly.evaluate(x).val()
        if value is INFINITY:
            return INFINITY
        correction = Fraction(0)
        for s, coord in zip(shift, x.coords):
            if s:
                if coord.is_zero:
                    raise DomainError(f'{self} has a pole at {x}')
                correction += s * coord.val()
        return value - correction

    def __str__(self) -> str:
        names = self.variable_names(self.nvars)
        pieces = []
        for exps, c in self.terms:
            mono = '*'.join(_format_exponent(n, Fraction(e)) for n, e in zip(names, exps) if e != 0)
            pieces.append((mono, c))
        return _format_terms(pieces)


def determinant(m: Sequence[Sequence[PuiseuxSeries]]) -> PuiseuxSeries:
    """Determinant of a square matrix of series, by permutation expansion."""
    n = len(m)
    total = PuiseuxSeries()
    for perm in permutations(range(n)):
        inversions = sum(1 for i, j in combinations(range(n), 2) if perm[i] > perm[j])
        term = PuiseuxSeries.constant(-1 if inversions % 2 else 1)
        for row, col in enumerate(perm):
            term = term * m[row][col]
        total = total + term
    return total


def invariant_factor_valuations(m: Sequence[Sequence[PuiseuxSeries]]) -> tuple[AdditiveVal, ...]:
    """
    Valuations of the invariant factors of ``m`` over the valuation ring.

    With ``delta_k`` the least valuation of a ``k x k`` minor, the k-th invariant factor has
    valuation ``delta_k - delta_(k-1)``; the result is nondecreasing.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError('invariant factors need a square matrix')
    deltas: list[AdditiveVal] = [Fraction(0)]
    for k in range(1, n + 1):
        deltas.append(val_min(
            determinant([[m[r][c] for c in cols] for r in rows]).val()
            for rows in combinations(range(n), k)
            for cols in combinations(range(n), k)
        ))
    factors: list[AdditiveVal] = []
    for prev, cur in zip(deltas, deltas[1:]):
        factors.append(INFINITY if cur is INFINITY else cur - prev)
    return tuple(factors)


__all__ = [
    'INFINITY',
    'Infinity',
    'AdditiveVal',
    'val_min',
    'PuiseuxSeries',
    'PuiseuxPoint',
    'LaurentPolynomial',
    'val',
    'determinant',
    'invariant_factor_valuations',
]
