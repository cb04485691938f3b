"""
Fixed-n brute-force oracle for the free Haar trace h.

The only inputs are the entry cumulants of u and u* (``brown_entry_cumulant``)
and the moment-cumulant formula. Trace moments are summed explicitly over
index tuples and cumulants of traces come from moment inversion, so nothing
here goes through the symbolic engine in ``services``.
"""
import itertools
import logging
from fractions import Fraction
from typing import Callable, Dict, Hashable, Sequence, Tuple

from django.core.exceptions import ValidationError

from .conf import get_config
from .exceptions import BudgetExceeded
from .kernels import brown_entry_cumulant
from .models import ComparisonEntry, EngineOracleReport, EntryLabel, StarLabel, TraceWord
from .partitions import Composition, enumerate_nc, interval_partition, join, SetPartition

logger = logging.getLogger(__name__)


def cumulants_from_moments(moment: Callable[[tuple], Fraction], items: Sequence[Hashable],
                           max_items: int = 12) -> Fraction:
    """kappa_s(a_1, ..., a_s) from the moment functional by

        kappa_s = m(a_1 ... a_s) - sum over pi in NC(s), pi != 1_s, of kappa_pi.

    ``moment`` receives the sub-tuple of items (in order) whose product it evaluates.
    """
    if len(items) > max_items:
        raise BudgetExceeded('number of arguments s', len(items), max_items)
    items = tuple(items)
    cache: Dict[Tuple[int, ...], Fraction] = {}

    def kappa(positions):
        if positions in cache:
            return cache[positions]
        value = Fraction(moment(tuple(items[i] for i in positions)))
        for partition in enumerate_nc(len(positions)):
            if len(partition) == 1:
                continue
            term = Fraction(1)
            for block in partition.blocks:
                term *= kappa(tuple(positions[v - 1] for v in block))
                if not term:
                    break
            value -= term
        cache[positions] = value
        return value

    return kappa(tuple(range(len(items))))


class HaarTraceOracle:
    """Moments and cumulants under h at one concrete dimension n.

    Memo tables are plain dicts; an oracle instance is meant for one thread.
    """

    def __init__(self, n_value: int, max_length=None, tuple_budget=None):
        if isinstance(n_value, bool) or not isinstance(n_value, int) or n_value < 1:
            raise ValidationError(f"Dimension n must be a positive integer, got {n_value!r}")
        config = get_config(oracle_max_length=max_length, tuple_budget=tuple_budget)
        self.n_value = n_value
        self.max_length = config.oracle_max_length
        self.tuple_budget = config.tuple_budget
        self.moment_table: Dict[tuple, Fraction] = {}
        self._trace_moments: Dict[TraceWord, Fraction] = {}

    @staticmethod
    def canonical(entries: Sequence[EntryLabel]) -> tuple:
        """Relabel indices by first occurrence; h only sees the index pattern."""
        relabel = {}
        key = []
        for entry in entries:
            row = relabel.setdefault(entry.row, len(relabel) + 1)
            col = relabel.setdefault(entry.col, len(relabel) + 1)
            key.append((entry.star, row, col))
        return tuple(key)

    def entry_moment(self, entries: Sequence[EntryLabel]) -> Fraction:
        """h((u^{e_1})_{i_1 j_1} ... (u^{e_r})_{i_r j_r}) = sum over NC(r) of kappa_pi."""
        if len(entries) > self.max_length:
            raise BudgetExceeded('entry word length', len(entries), self.max_length)
        for entry in entries:
            entry.clean(self.n_value)
        key = self.canonical(entries)
        if key not in self.moment_table:
            self.moment_table[key] = self._entry_moment(key)
        return self.moment_table[key]

    def _entry_moment(self, key) -> Fraction:
        entries = [EntryLabel(star, row, col) for star, row, col in key]
        blocks: Dict[tuple, Fraction] = {}
        total = Fraction(0)
        for partition in enumerate_nc(len(entries)):
            term = Fraction(1)
            for block in partition.blocks:
                if block not in blocks:
                    blocks[block] = brown_entry_cumulant(
                        [entries[v - 1] for v in block]
                    ).evaluate(self.n_value)
                term *= blocks[block]
                if not term:
                    break
            total += term
        return total

    def trace_moment(self, word: TraceWord) -> Fraction:
        """h(chi(u^{p_1})^{e_1} ... ) with chi(A) = sum_i A_ii, summed over [n]^p.

        Factor k contributes (u^{e_k})_{i_j i_{j+1}} along its own positions,
        with the last index of the factor wrapping to its first.
        """
        if word in self._trace_moments:
            return self._trace_moments[word]
        p = word.total_power
        if self.n_value ** p > self.tuple_budget:
            raise BudgetExceeded('n^p', self.n_value ** p, self.tuple_budget)
        layout = []
        for start, factor in zip(word.composition.starts, word.factors):
            first = start - 1
            for offset in range(factor.power):
                following = first + (offset + 1) % factor.power
                layout.append((factor.star, first + offset, following))
        total = Fraction(0)
        for indices in itertools.product(range(1, self.n_value + 1), repeat=p):
            total += self.entry_moment(
                [EntryLabel(star, indices[j], indices[k]) for star, j, k in layout]
            )
        self._trace_moments[word] = total
        return total

    def trace_cumulant(self, word: TraceWord) -> Fraction:
        return cumulants_from_moments(
            lambda factors: self.trace_moment(TraceWord(factors)),
            word.factors,
            max_items=self.max_length,
        )

    def product_formula_sides(self, composition: Composition,
                              entries: Sequence[EntryLabel]) -> Tuple[Fraction, Fraction]:
        """Both sides of

            kappa_s(a_1...a_{p_1}, ..., a_{p-p_s+1}...a_p) = sum over pi v gamma_c = 1_p of kappa_pi,

        the left by moment inversion on the grouped products, the right directly.
        """
        entries = tuple(entries)
        if composition.total != len(entries):
            raise ValidationError(
                f"Composition of {composition.total} does not match {len(entries)} entries"
            )
        if len(entries) > self.max_length:
            raise BudgetExceeded('entry word length', len(entries), self.max_length)
        groups = tuple(entries[start - 1:start - 1 + part]
                       for start, part in zip(composition.starts, composition.parts))
        left = cumulants_from_moments(
            lambda chosen: self.entry_moment([e for group in chosen for e in group]),
            groups,
            max_items=self.max_length,
        )
        gamma_c = interval_partition(composition)
        full = SetPartition.one(composition.total)
        right = Fraction(0)
        for partition in enumerate_nc(composition.total):
            if join(partition, gamma_c) != full:
                continue
            term = Fraction(1)
            for block in partition.blocks:
                term *= brown_entry_cumulant([entries[v - 1] for v in block]).evaluate(self.n_value)
            right += term
        return left, right

    def check_product_formula(self, composition: Composition, entries: Sequence[EntryLabel]) -> bool:
        left, right = self.product_formula_sides(composition, entries)
        return left == right

    def unitarity_sums(self) -> Dict[Tuple[str, int, int], Fraction]:
        """sum_k h(u*_{ki} u_{kj}) ('columns') and sum_k h(u_{ik} u*_{jk}) ('rows').

        u*_{ki} is the entry (u*)_{ik}; both sums should be delta_ij.
        """
        n = self.n_value
        sums = {}
        for i, j in itertools.product(range(1, n + 1), repeat=2):
            sums[('columns', i, j)] = sum(
                (self.entry_moment([EntryLabel(StarLabel.STAR, i, k), EntryLabel(StarLabel.PLAIN, k, j)])
                 for k in range(1, n + 1)),
                Fraction(0),
            )
            sums[('rows', i, j)] = sum(
                (self.entry_moment([EntryLabel(StarLabel.PLAIN, i, k), EntryLabel(StarLabel.STAR, k, j)])
                 for k in range(1, n + 1)),
                Fraction(0),
            )
        return sums

    def unitarity_holds(self) -> bool:
        return all(value == (1 if i == j else 0)
                   for (_, i, j), value in self.unitarity_sums().items())


def compare_engine_oracle(engine, max_total_p: int, n_values: Sequence[int]) -> EngineOracleReport:
    """Evaluate the engine's symbolic cumulant at each n and compare with the oracle.

    ``engine`` is anything with ``brown(word) -> CumulantReport``.
    """
    if max_total_p < 1:
        raise ValidationError(f"max_total_p must be positive, got {max_total_p}")
    n_values = tuple(n_values)
    oracles = {n: HaarTraceOracle(n) for n in n_values}
    report = EngineOracleReport(max_total_p=max_total_p, n_values=n_values)
    logger.info("engine/oracle comparison up to total power %d at n in %s", max_total_p, n_values)
    for word in TraceWord.enumerate(max_total_p, max_total_p):
        value = engine.brown(word).value
        for n in n_values:
            entry = ComparisonEntry(word=word, n_value=n, engine=value.evaluate(n),
                                    oracle=oracles[n].trace_cumulant(word))
            if not entry.ok:
                logger.warning("mismatch at [%s], n=%d: engine %s, oracle %s",
                               word, n, entry.engine, entry.oracle)
            report.entries.append(entry)
    logger.info("engine/oracle comparison: %d checks, %d mismatches",
                report.checked, len(report.mismatches))
    return report
