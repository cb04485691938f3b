import itertools
import logging
import math
from fractions import Fraction
from multiprocessing import Pool
from typing import Dict, Hashable, Sequence, Tuple

from django.core.exceptions import ValidationError

from .conf import get_config
from .exceptions import BudgetExceeded
from .kernels import BlockKernel, alternates, catalan, is_adapted, kappa_pi, sign
from .laurent import DIVERGENT, ONE, ZERO, LaurentPoly
from .models import CircularityEntry, CircularityReport, CumulantReport, StarLabel, TraceWord
from .partitions import (
    Composition,
    complement_cycle_ids,
    connects,
    enumerate_nc,
    enumerate_nc_with_first_block,
    first_blocks,
    is_connecting,
)

logger = logging.getLogger(__name__)

FamilyKey = Tuple[Tuple[int, ...], Tuple[Hashable, ...]]


# Slice workers run in pool processes: module level, pure, settings-free.

def _general_slice(first_block, composition, kernel, labels):
    p, s = composition.total, composition.length
    total, count = ZERO, 0
    for partition in enumerate_nc_with_first_block(p, first_block):
        if not is_connecting(partition, composition):
            continue
        kappa = kappa_pi(partition, kernel, labels)
        if not kappa:
            continue
        total = total + kappa * LaurentPoly.monomial(1, p + 2 - s - len(partition))
        count += 1
    return total, count


def _brown_slice(first_block, composition, labels):
    total, count = 0, 0
    for partition in enumerate_nc_with_first_block(composition.total, first_block):
        if not is_adapted(partition, labels):
            continue
        if not is_connecting(partition, composition):
            continue
        total += _brown_weight(partition)
        count += 1
    return total, count


def _brown_weight(partition):
    """(-1)^{|pi|} prod_V C_{#V/2-1}."""
    return sign(len(partition)) * math.prod(catalan(len(block) // 2 - 1) for block in partition.blocks)


def _factor_of(composition):
    """Factor index of every element of [p], 1-based elements."""
    owner = [0]
    for k, part in enumerate(composition.parts):
        owner.extend([k] * part)
    return owner


def _labellings(blocks, factor_of, s, alphabet, block_value, one):
    """Every family labelling in alphabet^s whose block values are all nonzero,
    with the product of those values. Branches die at the first zero block.
    """
    assignment = [None] * s

    def extend(i, product):
        if i == len(blocks):
            yield tuple(assignment), product
            return
        block = blocks[i]
        free = sorted({factor_of[v] for v in block if assignment[factor_of[v]] is None})
        for choice in itertools.product(alphabet, repeat=len(free)):
            for k, label in zip(free, choice):
                assignment[k] = label
            value = block_value(tuple(assignment[factor_of[v]] for v in block))
            if value:
                yield from extend(i + 1, product * value)
        for k in free:
            assignment[k] = None

    yield from extend(0, one)


def _general_total_slice(first_block, total, max_s, kernel, alphabet):
    compositions = [(c, _factor_of(c)) for c in Composition.all_of(total, max_s)]
    values: Dict[tuple, LaurentPoly] = {}

    def block_value(labels):
        if labels not in values:
            values[labels] = kernel.block_value(labels)
        return values[labels]

    sums: Dict[FamilyKey, LaurentPoly] = {}
    for partition in enumerate_nc_with_first_block(total, first_block):
        cycle_ids = complement_cycle_ids(partition)
        for composition, factor_of in compositions:
            if not connects(cycle_ids, composition):
                continue
            scale = LaurentPoly.monomial(1, total + 2 - composition.length - len(partition))
            for family, kappa in _labellings(partition.blocks, factor_of, composition.length,
                                             alphabet, block_value, ONE):
                key = (composition.parts, family)
                sums[key] = sums.get(key, ZERO) + kappa * scale
    return sums


def _brown_total_slice(first_block, total, max_s):
    compositions = [(c, _factor_of(c)) for c in Composition.all_of(total, max_s)]
    sums: Dict[FamilyKey, list] = {}
    for partition in enumerate_nc_with_first_block(total, first_block):
        if any(len(block) % 2 for block in partition.blocks):
            continue
        weight = _brown_weight(partition)
        cycle_ids = complement_cycle_ids(partition)
        for composition, factor_of in compositions:
            if not connects(cycle_ids, composition):
                continue
            for stars, _ in _labellings(partition.blocks, factor_of, composition.length,
                                        tuple(StarLabel), alternates, 1):
                entry = sums.setdefault((composition.parts, stars), [0, 0])
                entry[0] += weight
                entry[1] += 1
    return sums


def expected_circular_limit(word: TraceWord) -> Fraction:
    """Limit cumulant of a *-free circular family with mean 0 and covariance 1."""
    if word.length == 2:
        first, second = word.factors
        if first.power == second.power and first.star != second.star:
            return Fraction(1)
    return Fraction(0)


class TraceCumulantService:
    """Joint free cumulants of traces of powers, as Laurent polynomials in n.

    With more than one worker the service owns a process pool, created on first
    use and shared by every call; use it as a context manager or call ``close()``.
    """

    def __init__(self, enumeration_limit=None, workers=None):
        config = get_config(enumeration_limit=enumeration_limit, worker_count=workers)
        self.enumeration_limit = config.enumeration_limit
        self.workers = config.workers
        self._pool = None
        self._reports = {}

    def __enter__(self):
        return self

    def __exit__(self, *exc_info):
        self.close()

    def close(self):
        if self._pool is not None:
            self._pool.close()
            self._pool.join()
            self._pool = None

    def _check_budget(self, p):
        if p > self.enumeration_limit:
            raise BudgetExceeded('total power p', p, self.enumeration_limit)

    def _map(self, worker, p, *args):
        """Run ``worker`` on every first-block slice of NC(p); results come back in slice order."""
        slices = list(first_blocks(p))
        if self.workers > 1 and len(slices) > 1:
            if self._pool is None:
                self._pool = Pool(self.workers)
            return self._pool.starmap(worker, [(block, *args) for block in slices])
        return [worker(block, *args) for block in slices]

    def _reduce(self, worker, start, composition, *args):
        total, count = start, 0
        for value, contributing in self._map(worker, composition.total, composition, *args):
            total = total + value
            count += contributing
        return total, count

    def general(self, kernel: BlockKernel, composition: Composition,
                family_labels: Sequence[Hashable]) -> LaurentPoly:
        """Cumulant of chi(A_{l_1}^{p_1}), ..., chi(A_{l_s}^{p_s}) for an R-cyclic family
        whose cyclic cumulants are index-independent and given by ``kernel``:

            n^{p+2-s} * sum over connecting pi in NC(p) of n^{-|pi|} kappa_pi[labels]
        """
        if len(family_labels) != composition.length:
            raise ValidationError(
                f"{len(family_labels)} family labels for a composition with {composition.length} parts"
            )
        self._check_budget(composition.total)
        labels = tuple(label for label, part in zip(family_labels, composition.parts)
                       for _ in range(part))
        value, count = self._reduce(_general_slice, ZERO, composition, kernel, labels)
        logger.debug("general %s %s: %s from %d partitions", composition.parts, family_labels, value, count)
        return value

    def general_total(self, kernel: BlockKernel, total: int, alphabet: Sequence[Hashable],
                      max_s=None) -> Dict[FamilyKey, LaurentPoly]:
        """``general`` for every composition of ``total`` (at most ``max_s`` parts) and every
        family labelling from ``alphabet``, in one pass over NC(total).

        Keyed by (composition parts, family labels); labellings whose cumulant is zero are absent.
        """
        self._check_budget(total)
        sums: Dict[FamilyKey, LaurentPoly] = {}
        for partial in self._map(_general_total_slice, total, total, max_s, kernel, tuple(alphabet)):
            for key, value in partial.items():
                sums[key] = sums.get(key, ZERO) + value
        return {key: value for key, value in sums.items() if value}

    def brown(self, word: TraceWord) -> CumulantReport:
        """kappa_s(chi(u^{p_1})^{e_1}, ..., chi(u^{p_s})^{e_s}) under the free Haar trace:

            n^{2-s} (-1)^{p/2} * sum over connecting, adapted pi of (-1)^{|pi|} prod_V C_{#V/2-1}
        """
        if word in self._reports:
            return self._reports[word]
        p, s = word.total_power, word.length
        self._check_budget(p)
        if p % 2:
            # An odd total leaves some block odd, so nothing is adapted.
            report = CumulantReport(word, ZERO, 0)
        else:
            total, count = self._reduce(_brown_slice, 0, word.composition, word.labels)
            report = CumulantReport(word, LaurentPoly.monomial(sign(p // 2) * total, 2 - s), count)
        logger.debug("cumulant [%s] = %s (%d partitions)", word, report.value, report.contributing_partitions)
        self._reports[word] = report
        return report

    def brown_total(self, total: int, max_s=None) -> Dict[TraceWord, CumulantReport]:
        """``brown`` for every word of total power ``total`` with at most ``max_s`` factors,
        in one pass over NC(total). Results are also kept for later ``brown`` calls.
        """
        self._check_budget(total)
        sums: Dict[FamilyKey, list] = {}
        if total % 2 == 0:
            for partial in self._map(_brown_total_slice, total, total, max_s):
                for key, (value, count) in partial.items():
                    entry = sums.setdefault(key, [0, 0])
                    entry[0] += value
                    entry[1] += count
        reports = {}
        for composition in Composition.all_of(total, max_s):
            for stars in itertools.product(StarLabel, repeat=composition.length):
                word = TraceWord.of(*zip(composition.parts, stars))
                value, count = sums.get((composition.parts, stars), (0, 0))
                reports[word] = CumulantReport(
                    word, LaurentPoly.monomial(sign(total // 2) * value, 2 - composition.length), count,
                )
                self._reports.setdefault(word, reports[word])
        logger.debug("cumulants of total power %d: %d words", total, len(reports))
        return reports

    def asymptotic_distribution(self, word: TraceWord) -> Fraction:
        limit = self.brown(word).limit
        # The value is a multiple of n^{2-s}, and zero when s = 1.
        assert limit is not DIVERGENT, f"cumulant of [{word}] diverges"
        return limit

    def trace_moment(self, word: TraceWord) -> LaurentPoly:
        """h(chi(u^{p_1})^{e_1} ... chi(u^{p_s})^{e_s}) from the cumulants, summed over NC(s)."""
        self._check_budget(word.total_power)
        total = ZERO
        for partition in enumerate_nc(word.length):
            term = ONE
            for block in partition.blocks:
                term = term * self.brown(word.subword(v - 1 for v in block)).value
                if not term:
                    break
            total = total + term
        return total

    def circularity_report(self, max_p: int, max_s: int) -> CircularityReport:
        """Check every word with total power <= max_p and at most max_s factors against
        the cumulants of a *-free circular family: kappa_1 = 0, kappa_2 = 1 exactly for
        equal powers with opposite stars, higher cumulants O(n^{2-s}).
        """
        if max_p < 1 or max_s < 1:
            raise ValidationError(f"Budgets must be positive, got max_p={max_p}, max_s={max_s}")
        self._check_budget(max_p)
        logger.info("circularity check up to total power %d, %d factors", max_p, max_s)
        report = CircularityReport(max_p=max_p, max_s=max_s)
        for total in range(1, max_p + 1):
            cumulants = self.brown_total(total, max_s)
            for word, cumulant in cumulants.items():
                report.entries.append(self._circularity_entry(word, cumulant))
        for entry in report.violations:
            logger.warning("circularity violation at [%s]: %s", entry.word, '; '.join(entry.problems))
        logger.info("circularity check: %d words, %d violations", report.checked, len(report.violations))
        return report

    @staticmethod
    def _circularity_entry(word, cumulant):
        expected = expected_circular_limit(word)
        problems = []
        if cumulant.limit != expected:
            problems.append(f"limit {cumulant.limit} differs from {expected}")
        if cumulant.value and cumulant.value.support != (2 - word.length,):
            problems.append(f"{cumulant.value} is not a multiple of n^{2 - word.length}")
        if word.length <= 2 and cumulant.value != LaurentPoly.constant(expected):
            problems.append(f"{cumulant.value} is not exactly {expected}")
        return CircularityEntry(word=word, value=cumulant.value, limit=cumulant.limit,
                                expected=expected, problems=tuple(problems))
