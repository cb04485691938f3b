"""
Entry-level free cumulants and block kernels.

A block kernel returns the common value of the cyclic-index cumulant of a
block, given the labels of the block's entries. ``BrownKernel`` carries the
free cumulants of the entries of u and u* under the free Haar trace: nonzero
only for even blocks with alternating stars, where

    kappa_r = n^{1-r} (-1)^{r/2-1} C_{r/2-1}.
"""
from __future__ import annotations

import abc
import math
from typing import Hashable, Mapping, Sequence

from django.core.exceptions import ValidationError

from .laurent import ZERO, LaurentPoly
from .models import EntryLabel, StarLabel
from .partitions import SetPartition


def catalan(k: int) -> int:
    if k < 0:
        raise ValidationError(f"Catalan index must be >= 0, got {k}")
    return math.comb(2 * k, k) // (k + 1)


def sign(k: int) -> int:
    """(-1)^k as an exact integer, for any integer k."""
    return -1 if k % 2 else 1


def alternates(labels: Sequence[Hashable]) -> bool:
    """Consecutive labels differ (no wrap-around comparison)."""
    return all(a != b for a, b in zip(labels, labels[1:]))


def brown_block_value(labels: Sequence[StarLabel]) -> LaurentPoly:
    r = len(labels)
    if r == 0 or r % 2 or not alternates(labels):
        return ZERO
    # Two letters, even length, consecutive alternation: the cycle closes too.
    assert labels[-1] != labels[0]
    half = r // 2
    return LaurentPoly.monomial(sign(half - 1) * catalan(half - 1), 1 - r)


def has_cyclic_indices(entries: Sequence[EntryLabel]) -> bool:
    """j_{l-1} = i_l for 2 <= l <= r, and j_r = i_1."""
    return all(entries[l - 1].col == entries[l].row for l in range(1, len(entries))) \
        and entries[-1].col == entries[0].row


def brown_entry_cumulant(entries: Sequence[EntryLabel]) -> LaurentPoly:
    """kappa_r((u^{e_1})_{i_1 j_1}, ..., (u^{e_r})_{i_r j_r}) under the free Haar trace."""
    if not entries or not has_cyclic_indices(entries):
        return ZERO
    return brown_block_value([entry.star for entry in entries])


class BlockKernel(abc.ABC):
    """Cyclic-index cumulant of one block, as a function of its labels only.

    Implementations are stateless: they are shipped to worker processes.
    """

    @abc.abstractmethod
    def block_value(self, labels: Sequence[Hashable]) -> LaurentPoly:
        ...


class BrownKernel(BlockKernel):
    def block_value(self, labels):
        return brown_block_value(labels)


class ZeroKernel(BlockKernel):
    def block_value(self, labels):
        return ZERO


class TableKernel(BlockKernel):
    """Kernel given by an explicit table from label tuples to values; zero elsewhere."""

    def __init__(self, table: Mapping[tuple, LaurentPoly]):
        self.table = {tuple(labels): value for labels, value in table.items()}

    def block_value(self, labels):
        return self.table.get(tuple(labels), ZERO)


def _check_sizes(partition: SetPartition, labels: Sequence):
    if partition.ground_size != len(labels):
        raise ValidationError(
            f"Partition of [{partition.ground_size}] does not match {len(labels)} labels"
        )


def is_adapted(partition: SetPartition, labels: Sequence[Hashable]) -> bool:
    """Every block has even size and consecutively distinct labels in increasing order."""
    _check_sizes(partition, labels)
    for block in partition.blocks:
        if len(block) % 2:
            return False
        if not alternates([labels[v - 1] for v in block]):
            return False
    return True


def kappa_pi(partition: SetPartition, kernel: BlockKernel, labels: Sequence[Hashable]) -> LaurentPoly:
    """Product over blocks of the kernel value on each block's labels."""
    _check_sizes(partition, labels)
    value = LaurentPoly.constant(1)
    for block in partition.blocks:
        factor = kernel.block_value(tuple(labels[v - 1] for v in block))
        if not factor:
            return ZERO
        value = value * factor
    return value


def brown_kappa_closed_form(partition: SetPartition) -> LaurentPoly:
    """n^{|pi|-p} (-1)^{p/2-|pi|} prod_V C_{#V/2-1}, valid for adapted pi."""
    p, blocks = partition.ground_size, len(partition)
    product = math.prod(catalan(len(block) // 2 - 1) for block in partition.blocks)
    return LaurentPoly.monomial(sign(p // 2 - blocks) * product, blocks - p)
