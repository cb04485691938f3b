"""
Exact Laurent polynomials in the single indeterminate ``n``.

Coefficients are ``fractions.Fraction`` values; nothing here ever touches
floating point. A ``LaurentPoly`` keeps a canonical term map (no zero
coefficients), so two values are equal exactly when their term maps are.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Dict, Mapping, Union

from django.core.exceptions import ValidationError

Scalar = Union[int, Fraction]


def rational_str(value: Scalar) -> str:
    """Render a rational as ``"p/q"``, always with an explicit denominator."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"Not a rational number: {text!r}") from exc


class Divergent:
    """Limit marker for a Laurent polynomial with a positive power of ``n``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return 'DIVERGENT'

    def __reduce__(self):
        return (Divergent, ())


DIVERGENT = Divergent()


class LaurentPoly:
    __slots__ = ('_terms', '_key')

    def __init__(self, terms: Mapping[int, Scalar] | None = None):
        clean: Dict[int, Fraction] = {}
        for exponent, coefficient in (terms or {}).items():
            if not isinstance(coefficient, Rational):
                raise TypeError(f"Coefficient {coefficient!r} is not an exact rational")
            coefficient = Fraction(coefficient)
            if coefficient:
                clean[int(exponent)] = coefficient
        self._terms = dict(sorted(clean.items()))
        self._key = tuple(self._terms.items())

    @classmethod
    def monomial(cls, coefficient: Scalar, exponent: int) -> LaurentPoly:
        return cls({exponent: coefficient})

    @classmethod
    def constant(cls, value: Scalar) -> LaurentPoly:
        return cls({0: value})

    @classmethod
    def _coerce(cls, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, Rational):
            return cls.constant(other)
        return NotImplemented

    @property
    def terms(self) -> Mapping[int, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def degree(self) -> int | None:
        """Largest exponent present, or None for the zero polynomial."""
        return self.support[-1] if self._terms else None

    def coefficient(self, exponent: int) -> Fraction:
        return self._terms.get(exponent, Fraction(0))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for exponent, coefficient in other._terms.items():
            terms[exponent] = terms.get(exponent, 0) + coefficient
        return LaurentPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                terms[e1 + e2] = terms.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._key == other._key

    def __hash__(self):
        # Constants compare equal to their scalar, so they hash like it too.
        if not self._terms:
            return hash(0)
        if self.support == (0,):
            return hash(self._terms[0])
        return hash(self._key)

    def __bool__(self):
        return bool(self._terms)

    def __getstate__(self):
        return self._terms

    def __setstate__(self, state):
        self._terms = dict(state)
        self._key = tuple(self._terms.items())

    def evaluate(self, n_value: int) -> Fraction:
        """Exact value at the integer ``n_value >= 1``."""
        if isinstance(n_value, bool) or not isinstance(n_value, int) or n_value < 1:
            raise ValidationError(f"Evaluation point must be a positive integer, got {n_value!r}")
        base = Fraction(n_value)
        return sum((c * base ** e for e, c in self._terms.items()), Fraction(0))

    def limit(self) -> Fraction | Divergent:
        """Limit as n goes to infinity: the constant term, unless a positive power is present."""
        if any(e > 0 for e in self._terms):
            return DIVERGENT
        return self.coefficient(0)

    def to_json(self) -> Dict[str, str]:
        return {str(e): rational_str(c) for e, c in self._terms.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> LaurentPoly:
        if not isinstance(data, Mapping):
            raise ValidationError("A Laurent polynomial is encoded as an object")
        terms = {}
        for key, value in data.items():
            try:
                exponent = int(key)
            except (TypeError, ValueError) as exc:
                raise ValidationError(f"Exponent keys must be integers, got {key!r}") from exc
            terms[exponent] = parse_rational(value)
        return cls(terms)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._terms:
            return '0'
        parts = []
        for exponent, coefficient in reversed(self._terms.items()):
            if exponent == 0:
                parts.append(str(coefficient))
            elif coefficient == 1:
                parts.append(f"n^{exponent}")
            else:
                parts.append(f"{coefficient}*n^{exponent}")
        return ' + '.join(parts)


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)


def laurent_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def laurent_eval(a: LaurentPoly, n_value: int) -> Fraction:
    return a.evaluate(n_value)


def laurent_limit(a: LaurentPoly) -> Fraction | Divergent:
    return a.limit()


def laurent_neg(a: LaurentPoly) -> LaurentPoly:
    return -a


def laurent_sub(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a - b
