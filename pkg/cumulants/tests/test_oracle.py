import ast
import itertools
from fractions import Fraction
from pathlib import Path

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase, tag
from hypothesis import given, settings, strategies as st

import cumulants.oracle
from cumulants.exceptions import BudgetExceeded
from cumulants.models import EntryLabel, StarLabel, TraceWord
from cumulants.oracle import HaarTraceOracle, compare_engine_oracle, cumulants_from_moments
from cumulants.partitions import Composition, enumerate_nc
from cumulants.services import TraceCumulantService

P, S = StarLabel.PLAIN, StarLabel.STAR


def word(*pairs):
    return TraceWord.of(*pairs)


def entries_on(n_value, length):
    labels = itertools.product((P, S), repeat=length)
    indices = itertools.product(range(1, n_value + 1), repeat=2 * length)
    for stars, flat in itertools.product(list(labels), list(indices)):
        yield [EntryLabel(e, flat[2 * k], flat[2 * k + 1]) for k, e in enumerate(stars)]


entry_lists = st.lists(
    st.builds(EntryLabel, st.sampled_from([P, S]), st.integers(1, 2), st.integers(1, 2)),
    min_size=1, max_size=6,
)


class MomentInversionTests(SimpleTestCase):
    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 5), st.data())
    def test_recovers_cumulants_from_their_moments(self, s, data):
        fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)
        table = {}
        for size in range(1, s + 1):
            for positions in itertools.combinations(range(s), size):
                table[positions] = data.draw(fractions)

        def moment(chosen):
            total = Fraction(0)
            for partition in enumerate_nc(len(chosen)):
                term = Fraction(1)
                for block in partition.blocks:
                    term *= table[tuple(chosen[v - 1] for v in block)]
                total += term
            return total

        self.assertEqual(cumulants_from_moments(moment, tuple(range(s))), table[tuple(range(s))])

    def test_argument_budget(self):
        with self.assertRaises(BudgetExceeded):
            cumulants_from_moments(lambda chosen: Fraction(0), range(5), max_items=4)


class EntryMomentTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(HaarTraceOracle(2).entry_moment([EntryLabel(P, 1, 1)]), 0)
        self.assertEqual(HaarTraceOracle(2).entry_moment([EntryLabel(P, 1, 2), EntryLabel(S, 2, 1)]),
                         Fraction(1, 2))
        self.assertEqual(HaarTraceOracle(3).entry_moment([EntryLabel(P, 1, 2), EntryLabel(S, 3, 1)]), 0)

    def test_memo_is_keyed_by_index_pattern(self):
        oracle = HaarTraceOracle(3)
        oracle.entry_moment([EntryLabel(P, 1, 2), EntryLabel(S, 2, 1)])
        oracle.entry_moment([EntryLabel(P, 3, 1), EntryLabel(S, 1, 3)])
        self.assertEqual(len(oracle.moment_table), 1)

    @settings(max_examples=60, deadline=None)
    @given(entry_lists, st.integers(0, 5))
    def test_trace_property(self, entries, k):
        k %= len(entries)
        oracle = HaarTraceOracle(2)
        self.assertEqual(oracle.entry_moment(entries), oracle.entry_moment(entries[k:] + entries[:k]))

    def test_rejects_out_of_range_indices(self):
        with self.assertRaises(ValidationError):
            HaarTraceOracle(2).entry_moment([EntryLabel(P, 1, 3)])

    def test_length_budget(self):
        with self.assertRaises(BudgetExceeded):
            HaarTraceOracle(2, max_length=3).entry_moment([EntryLabel(P, 1, 1)] * 4)

    def test_rejects_bad_dimension(self):
        for n in (0, -1, 2.0, True):
            with self.assertRaises(ValidationError):
                HaarTraceOracle(n)


class UnitarityTests(SimpleTestCase):
    def test_unitarity(self):
        for n in (1, 2, 3):
            oracle = HaarTraceOracle(n)
            self.assertTrue(oracle.unitarity_holds(), n)
            self.assertEqual(len(oracle.unitarity_sums()), 2 * n * n)


class TraceMomentTests(SimpleTestCase):
    def test_examples(self):
        for n in (1, 2, 3):
            oracle = HaarTraceOracle(n)
            self.assertEqual(oracle.trace_moment(word((1, P), (1, S))), 1)
            self.assertEqual(oracle.trace_moment(word((1, P))), 0)
            self.assertEqual(oracle.trace_moment(word((1, P), (1, P))), 0)

    def test_tuple_budget(self):
        with self.assertRaises(BudgetExceeded):
            HaarTraceOracle(2, tuple_budget=10).trace_moment(word((4, P)))

    def test_matches_engine_moments(self):
        engine = TraceCumulantService(workers=1)
        for w in (word((1, P), (1, S), (1, P), (1, S)), word((2, P), (2, S)),
                  word((1, P), (2, S), (1, P)), word((2, P), (1, S), (1, S))):
            for n in (1, 2):
                self.assertEqual(engine.trace_moment(w).evaluate(n), HaarTraceOracle(n).trace_moment(w),
                                 (str(w), n))


class TraceCumulantTests(SimpleTestCase):
    def test_covariance(self):
        self.assertEqual(HaarTraceOracle(2).trace_cumulant(word((1, P), (1, S))), 1)
        self.assertEqual(HaarTraceOracle(2).trace_cumulant(word((2, P), (2, S))), 1)

    def test_alternating_fourth_cumulant(self):
        w = word((1, P), (1, S), (1, P), (1, S))
        self.assertEqual(HaarTraceOracle(2).trace_cumulant(w), Fraction(-1, 4))
        self.assertEqual(TraceCumulantService(workers=1).brown(w).value.evaluate(2), Fraction(-1, 4))


class ProductFormulaTests(SimpleTestCase):
    def test_examples(self):
        oracle = HaarTraceOracle(2)
        left, right = oracle.product_formula_sides(
            Composition((1, 1)), [EntryLabel(P, 1, 2), EntryLabel(S, 2, 1)])
        self.assertEqual((left, right), (Fraction(1, 2), Fraction(1, 2)))
        self.assertTrue(oracle.check_product_formula(
            Composition((2, 2)), [EntryLabel(P, 1, 2), EntryLabel(P, 2, 1), EntryLabel(S, 1, 2), EntryLabel(S, 2, 1)]))

    def test_size_mismatch(self):
        with self.assertRaises(ValidationError):
            HaarTraceOracle(2).product_formula_sides(Composition((2,)), [EntryLabel(P, 1, 1)])

    def _assert_exhaustive(self, max_length):
        oracle = HaarTraceOracle(2)
        for length in range(1, max_length + 1):
            compositions = list(Composition.all_of(length))
            for entries in entries_on(2, length):
                for composition in compositions:
                    left, right = oracle.product_formula_sides(composition, entries)
                    self.assertEqual(left, right, ([str(e) for e in entries], composition.parts))

    def test_exhaustive_short_words(self):
        self._assert_exhaustive(3)

    @tag('slow')
    def test_exhaustive_up_to_five(self):
        self._assert_exhaustive(5)


class EngineOracleComparisonTests(SimpleTestCase):
    def setUp(self):
        self.engine = TraceCumulantService(workers=1)

    def test_small_budget(self):
        report = compare_engine_oracle(self.engine, 2, [1])
        self.assertEqual(report.checked, 8)
        self.assertEqual(report.mismatches, [])

    def test_up_to_four(self):
        report = compare_engine_oracle(self.engine, 4, [1, 2])
        self.assertEqual(report.checked, 160)
        self.assertEqual(report.mismatches, [])

    @tag('slow')
    def test_up_to_six(self):
        report = compare_engine_oracle(self.engine, 6, [1, 2, 3])
        self.assertEqual(report.mismatches, [])

    def test_rejects_empty_budget(self):
        with self.assertRaises(ValidationError):
            compare_engine_oracle(self.engine, 0, [1])

    def test_oracle_does_not_import_the_engine(self):
        tree = ast.parse(Path(cumulants.oracle.__file__).read_text())
        imported = set()
        for node in ast.walk(tree):
            if isinstance(node, ast.ImportFrom):
                imported.add(node.module or '')
            elif isinstance(node, ast.Import):
                imported.update(alias.name for alias in node.names)
        self.assertFalse({name for name in imported if name.split('.')[-1] == 'services'})
