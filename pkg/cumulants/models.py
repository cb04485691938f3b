# cumulants/models.py
# Domain value types. Nothing here is persisted: the project runs without a
# database, so these are frozen dataclasses rather than ORM models.
from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Tuple

from django.core.exceptions import ValidationError

from .laurent import Divergent, LaurentPoly
from .partitions import Composition


class StarLabel(str, enum.Enum):
    PLAIN = 'plain'
    STAR = 'star'

    @property
    def suffix(self):
        return '*' if self is StarLabel.STAR else ''

    def flip(self):
        return StarLabel.PLAIN if self is StarLabel.STAR else StarLabel.STAR


@dataclass(frozen=True)
class EntryLabel:
    """The matrix entry (u^star)_{row, col}; note (u*)_{ij} is the adjoint of u_{ji}."""
    star: StarLabel
    row: int
    col: int

    def clean(self, n_value):
        if not (1 <= self.row <= n_value and 1 <= self.col <= n_value):
            raise ValidationError(
                f"Entry ({self.row}, {self.col}) lies outside [{n_value}] x [{n_value}]"
            )

    def __str__(self):
        return f"u{self.star.suffix}_{self.row}{self.col}"


@dataclass(frozen=True)
class Factor:
    """One factor chi(u^power)^star of a trace word."""
    power: int
    star: StarLabel = StarLabel.PLAIN

    def __str__(self):
        base = 'u' if self.power == 1 else f"u^{self.power}"
        return base + self.star.suffix


_FACTOR_RE = re.compile(r'^u(?:\^(\d+))?(\*)?$')


@dataclass(frozen=True)
class TraceWord:
    """A product chi(u^{p_1})^{e_1} ... chi(u^{p_s})^{e_s} of traces of powers."""
    factors: Tuple[Factor, ...]

    def __post_init__(self):
        object.__setattr__(self, 'factors', tuple(self.factors))
        self.clean()

    def clean(self):
        if not self.factors:
            raise ValidationError('A trace word needs at least one factor')
        for factor in self.factors:
            if factor.power < 1:
                raise ValidationError(f"Powers must be >= 1, got {factor.power}")

    @classmethod
    def of(cls, *pairs) -> TraceWord:
        """Build from (power, star) pairs; star may be a StarLabel or its value."""
        return cls(tuple(Factor(p, StarLabel(e)) for p, e in pairs))

    @classmethod
    def parse(cls, text: str) -> TraceWord:
        """Parse the grammar ``u^2, u^3*, u``: comma-separated factors, optional ``*``."""
        factors = []
        for chunk in str(text).split(','):
            match = _FACTOR_RE.match(chunk.strip().replace(' ', ''))
            if not match:
                raise ValidationError(f"Cannot parse factor {chunk.strip()!r}; expected u^<p> with optional *")
            power = int(match.group(1)) if match.group(1) else 1
            star = StarLabel.STAR if match.group(2) else StarLabel.PLAIN
            factors.append(Factor(power, star))
        return cls(tuple(factors))

    @classmethod
    def enumerate(cls, max_p: int, max_s: int) -> Iterator[TraceWord]:
        """Every word with at most max_s factors and total power at most max_p.

        Ordered by total power, then composition, then star pattern.
        """
        for total in range(1, max_p + 1):
            for composition in Composition.all_of(total, max_parts=max_s):
                for stars in itertools.product(StarLabel, repeat=composition.length):
                    yield cls(tuple(Factor(p, e) for p, e in zip(composition.parts, stars)))

    @property
    def length(self) -> int:
        return len(self.factors)

    @property
    def total_power(self) -> int:
        return sum(f.power for f in self.factors)

    @property
    def composition(self) -> Composition:
        return Composition(tuple(f.power for f in self.factors))

    @property
    def stars(self) -> Tuple[StarLabel, ...]:
        return tuple(f.star for f in self.factors)

    @property
    def labels(self) -> Tuple[StarLabel, ...]:
        """The expanded label sequence: e_1 repeated p_1 times, then e_2 repeated p_2 times, ..."""
        return tuple(f.star for f in self.factors for _ in range(f.power))

    def rotate(self, k: int = 1) -> TraceWord:
        k %= self.length
        return TraceWord(self.factors[k:] + self.factors[:k])

    def subword(self, positions) -> TraceWord:
        return TraceWord(tuple(self.factors[i] for i in positions))

    def to_json(self):
        return [str(f) for f in self.factors]

    def __str__(self):
        return ', '.join(str(f) for f in self.factors)


@dataclass(frozen=True)
class CumulantReport:
    word: TraceWord
    value: LaurentPoly
    contributing_partitions: int
    limit: Fraction | Divergent = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, 'limit', self.value.limit())


@dataclass(frozen=True)
class CircularityEntry:
    word: TraceWord
    value: LaurentPoly
    limit: Fraction
    expected: Fraction
    problems: Tuple[str, ...] = ()

    @property
    def ok(self):
        return not self.problems


@dataclass
class CircularityReport:
    max_p: int
    max_s: int
    entries: List[CircularityEntry] = field(default_factory=list)

    @property
    def checked(self):
        return len(self.entries)

    @property
    def violations(self):
        return [entry for entry in self.entries if not entry.ok]


@dataclass(frozen=True)
class ComparisonEntry:
    word: TraceWord
    n_value: int
    engine: Fraction
    oracle: Fraction

    @property
    def ok(self):
        return self.engine == self.oracle


@dataclass
class EngineOracleReport:
    max_total_p: int
    n_values: Tuple[int, ...]
    entries: List[ComparisonEntry] = field(default_factory=list)

    @property
    def checked(self):
        return len(self.entries)

    @property
    def mismatches(self):
        return [entry for entry in self.entries if not entry.ok]
