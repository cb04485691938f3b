"""
Set partitions of [p] = {1, ..., p}, noncrossing partitions and the
permutation toolkit around them.

Partitions are kept canonical (elements ascending inside a block, blocks
sorted by their minimum) so equality is structural. NC(p) is streamed by
the block-of-1 decomposition: the block holding the first element cuts the
remaining points into segments that are partitioned independently.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

from django.core.exceptions import ValidationError

from .exceptions import BudgetExceeded

NC_HARD_LIMIT = 16

Block = Tuple[int, ...]


@dataclass(frozen=True)
class Composition:
    """The multi-index (p_1, ..., p_s) with every part >= 1."""
    parts: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'parts', tuple(int(p) for p in self.parts))
        if not self.parts:
            raise ValidationError('A composition needs at least one part')
        if any(p < 1 for p in self.parts):
            raise ValidationError(f"Composition parts must be >= 1, got {self.parts}")

    @classmethod
    def parse(cls, text: str) -> Composition:
        try:
            parts = tuple(int(chunk) for chunk in str(text).split(','))
        except ValueError as exc:
            raise ValidationError(f"Cannot parse composition {text!r}") from exc
        return cls(parts)

    @classmethod
    def all_of(cls, total: int, max_parts: int | None = None) -> Iterator[Composition]:
        """Compositions of ``total``, fewest parts first, then lexicographic in cut points."""
        max_parts = total if max_parts is None else min(max_parts, total)
        for s in range(1, max_parts + 1):
            for cuts in itertools.combinations(range(1, total), s - 1):
                bounds = (0,) + cuts + (total,)
                yield cls(tuple(b - a for a, b in zip(bounds, bounds[1:])))

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def starts(self) -> Tuple[int, ...]:
        """First element of every interval: 1, p_1 + 1, ..., p - p_s + 1."""
        starts, position = [], 1
        for part in self.parts:
            starts.append(position)
            position += part
        return tuple(starts)


@dataclass(frozen=True)
class SetPartition:
    ground_size: int
    blocks: Tuple[Block, ...]

    @classmethod
    def from_blocks(cls, ground_size: int, blocks: Iterable[Iterable[int]]) -> SetPartition:
        """Validate and canonicalise an arbitrary block list."""
        if ground_size < 0:
            raise ValidationError(f"Ground size must be >= 0, got {ground_size}")
        canonical = [tuple(sorted(int(v) for v in block)) for block in blocks]
        seen = [v for block in canonical for v in block]
        if any(not block for block in canonical):
            raise ValidationError('Blocks must be non-empty')
        if sorted(seen) != list(range(1, ground_size + 1)):
            raise ValidationError(f"Blocks {canonical} do not partition [{ground_size}]")
        return cls._canonical(ground_size, canonical)

    @classmethod
    def _canonical(cls, ground_size: int, blocks: Iterable[Block]) -> SetPartition:
        return cls(ground_size, tuple(sorted(blocks, key=lambda b: b[0])))

    @classmethod
    def zero(cls, p: int) -> SetPartition:
        return cls(p, tuple((v,) for v in range(1, p + 1)))

    @classmethod
    def one(cls, p: int) -> SetPartition:
        return cls(p, (tuple(range(1, p + 1)),) if p else ())

    def __len__(self):
        return len(self.blocks)

    def block_index(self) -> Dict[int, int]:
        return {v: i for i, block in enumerate(self.blocks) for v in block}

    def is_noncrossing(self) -> bool:
        return is_noncrossing(self)

    def to_json(self):
        return {'p': self.ground_size, 'blocks': [list(b) for b in self.blocks]}


# Every NcPartition is a SetPartition that passes is_noncrossing.
NcPartition = SetPartition


def is_noncrossing(partition: SetPartition) -> bool:
    """No a < b < c < d with a, c in one block and b, d in another.

    Equivalent check: between two consecutive elements of a block only
    blocks lying entirely between them may appear.
    """
    owner = partition.block_index()
    bounds = [(block[0], block[-1]) for block in partition.blocks]
    for block in partition.blocks:
        for a, c in zip(block, block[1:]):
            for b in range(a + 1, c):
                low, high = bounds[owner[b]]
                if low < a or high > c:
                    return False
    return True


def ensure_noncrossing(partition: SetPartition) -> SetPartition:
    if not is_noncrossing(partition):
        raise ValidationError(f"{[list(b) for b in partition.blocks]} is not noncrossing")
    return partition


def _check_limit(p: int, limit: int):
    if p < 0:
        raise ValidationError(f"p must be >= 0, got {p}")
    if p > limit:
        raise BudgetExceeded('p', p, limit)


def _segment_partitions(lo: int, hi: int) -> Iterator[List[Block]]:
    """Noncrossing partitions of the interval lo..hi, as lists of blocks."""
    if lo > hi:
        yield []
        return
    for size in range(hi - lo + 1):
        for others in itertools.combinations(range(lo + 1, hi + 1), size):
            yield from _with_first_block((lo,) + others, hi)


def _with_first_block(block: Block, hi: int) -> Iterator[List[Block]]:
    ends = block + (hi + 1,)
    segments = [(ends[i] + 1, ends[i + 1] - 1) for i in range(len(block))]
    for rest in _segments_product(segments):
        yield [block] + rest


def _segments_product(segments) -> Iterator[List[Block]]:
    if not segments:
        yield []
        return
    (lo, hi), remaining = segments[0], segments[1:]
    for head in _segment_partitions(lo, hi):
        for tail in _segments_product(remaining):
            yield head + tail


def first_blocks(p: int) -> Iterator[Block]:
    """Every candidate block containing 1; each one labels a slice of NC(p)."""
    for size in range(p):
        for others in itertools.combinations(range(2, p + 1), size):
            yield (1,) + others


def enumerate_nc_with_first_block(p: int, block: Block) -> Iterator[SetPartition]:
    for blocks in _with_first_block(tuple(block), p):
        yield SetPartition._canonical(p, blocks)


def enumerate_nc(p: int, limit: int = NC_HARD_LIMIT) -> Iterator[SetPartition]:
    """Stream NC(p) in a deterministic order; there are Catalan(p) of them."""
    _check_limit(p, limit)
    if p == 0:
        yield SetPartition(0, ())
        return
    for block in first_blocks(p):
        yield from enumerate_nc_with_first_block(p, block)


def _pairings(lo: int, hi: int) -> Iterator[List[Block]]:
    if lo > hi:
        yield []
        return
    for partner in range(lo + 1, hi + 1, 2):
        for inside in _pairings(lo + 1, partner - 1):
            for outside in _pairings(partner + 1, hi):
                yield [(lo, partner)] + inside + outside


def enumerate_nc_pairings(p: int, limit: int = NC_HARD_LIMIT) -> Iterator[SetPartition]:
    """Stream NC_2(p); empty for odd p."""
    _check_limit(p, limit)
    if p % 2:
        return
    for blocks in _pairings(1, p):
        yield SetPartition._canonical(p, blocks)


def interval_partition(composition: Composition) -> SetPartition:
    """gamma_c: consecutive intervals of lengths p_1, ..., p_s."""
    blocks = [tuple(range(start, start + part))
              for start, part in zip(composition.starts, composition.parts)]
    return SetPartition(composition.total, tuple(blocks))


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}
        self.rank = {x: 0 for x in items}

    def find(self, x):
        root = self.parent[x]
        if self.parent[root] != root:
            root = self.parent[x] = self.find(root)
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x

    def groups(self) -> List[List[int]]:
        groups: Dict[int, List[int]] = {}
        for x in self.parent:
            groups.setdefault(self.find(x), []).append(x)
        return list(groups.values())


def join(a: SetPartition, b: SetPartition) -> SetPartition:
    """Join in the lattice of all set partitions of [p]."""
    if a.ground_size != b.ground_size:
        raise ValidationError(f"Ground sizes differ: {a.ground_size} != {b.ground_size}")
    uf = UnionFind(range(1, a.ground_size + 1))
    for block in itertools.chain(a.blocks, b.blocks):
        for v in block[1:]:
            uf.union(block[0], v)
    return SetPartition._canonical(a.ground_size, (tuple(sorted(g)) for g in uf.groups()))


@dataclass(frozen=True)
class Permutation:
    """A bijection of [p]; ``images[i - 1]`` is the image of i."""
    images: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'images', tuple(self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValidationError(f"{self.images} is not a permutation")

    @classmethod
    def identity(cls, p: int) -> Permutation:
        return cls(tuple(range(1, p + 1)))

    @classmethod
    def from_cycles(cls, p: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        images = list(range(1, p + 1))
        for cycle in cycles:
            for v, w in zip(cycle, tuple(cycle[1:]) + (cycle[0],)):
                images[v - 1] = w
        return cls(tuple(images))

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, v: int) -> int:
        return self.images[v - 1]

    def compose(self, other: Permutation) -> Permutation:
        """self o other: apply ``other`` first."""
        return Permutation(tuple(self.images[w - 1] for w in other.images))

    def inverse(self) -> Permutation:
        images = [0] * self.size
        for v, w in enumerate(self.images, start=1):
            images[w - 1] = v
        return Permutation(tuple(images))

    def cycles(self) -> List[Block]:
        seen, cycles = set(), []
        for start in range(1, self.size + 1):
            if start in seen:
                continue
            cycle, v = [], start
            while v not in seen:
                seen.add(v)
                cycle.append(v)
                v = self(v)
            cycles.append(tuple(cycle))
        return cycles


def gamma(p: int) -> Permutation:
    """The full cycle (1, 2, ..., p)."""
    return Permutation(tuple(range(2, p + 1)) + ((1,) if p else ()))


def to_permutation(partition: SetPartition) -> Permutation:
    """sigma_pi: every block, read in increasing order, becomes one cycle."""
    return Permutation.from_cycles(partition.ground_size, partition.blocks)


def cycle_count(sigma: Permutation) -> int:
    return len(sigma.cycles())


def complement_permutation(partition: SetPartition) -> Permutation:
    """gamma o sigma_pi^{-1}."""
    return gamma(partition.ground_size).compose(to_permutation(partition).inverse())


def kreweras(partition: SetPartition) -> SetPartition:
    """K(pi): the cycles of gamma o sigma_pi^{-1}, conjugated back by gamma^{-1}."""
    ensure_noncrossing(partition)
    p = partition.ground_size
    shift_back = gamma(p).inverse()
    blocks = [tuple(sorted(shift_back(v) for v in cycle))
              for cycle in complement_permutation(partition).cycles()]
    return SetPartition._canonical(p, blocks)


def rotate(partition: SetPartition, k: int) -> SetPartition:
    """Relabel every element x as x + k modulo p (within [p])."""
    p = partition.ground_size
    if p == 0:
        return partition
    blocks = [tuple(sorted((v - 1 + k) % p + 1 for v in block)) for block in partition.blocks]
    return SetPartition._canonical(p, blocks)


def complement_cycle_ids(partition: SetPartition) -> Tuple[int, ...]:
    """Cycle number of every element of [p] under gamma o sigma_pi^{-1}, 0-indexed by element.

    Same cycles as ``complement_permutation(partition).cycles()``, walked on plain
    image lists.
    """
    p = partition.ground_size
    follow = [0] * (p + 1)
    for block in partition.blocks:
        # sigma_pi^{-1} sends each element to its predecessor in the block, the minimum to the maximum.
        for previous, v in zip(block[-1:] + block[:-1], block):
            follow[v] = previous % p + 1
    ids = [-1] * (p + 1)
    cycle = 0
    for start in range(1, p + 1):
        if ids[start] >= 0:
            continue
        v = start
        while ids[v] < 0:
            ids[v] = cycle
            v = follow[v]
        cycle += 1
    return tuple(ids[1:])


def connects(cycle_ids: Sequence[int], composition: Composition) -> bool:
    """Separation test on precomputed ``complement_cycle_ids``."""
    seen = {cycle_ids[start - 1] for start in composition.starts}
    return len(seen) == composition.length


def is_connecting(partition: SetPartition, composition: Composition) -> bool:
    """pi v gamma_c = 1_p, decided by separation: the interval starts
    1, p_1 + 1, ..., p - p_s + 1 sit in distinct cycles of gamma o sigma_pi^{-1}.
    """
    if partition.ground_size != composition.total:
        raise ValidationError(
            f"Partition of [{partition.ground_size}] does not match composition of {composition.total}"
        )
    return connects(complement_cycle_ids(partition), composition)


def is_connecting_by_join(partition: SetPartition, composition: Composition) -> bool:
    """Reference definition of connectedness through the union-find join."""
    combined = join(partition, interval_partition(composition))
    return combined == SetPartition.one(composition.total)


def connecting_partitions(composition: Composition, limit: int = NC_HARD_LIMIT) -> Iterator[SetPartition]:
    for partition in enumerate_nc(composition.total, limit):
        if is_connecting(partition, composition):
            yield partition


def count_index_tuples(partition: SetPartition, composition: Composition,
                       n_value: int, budget: int = 1_000_000) -> int:
    """Brute-force c_pi: tuples i in [n]^p that are constant on the interval
    starts and satisfy i_j = i_{gamma o sigma_pi^{-1}(j)} for every j.
    """
    p = partition.ground_size
    if p != composition.total:
        raise ValidationError(f"Partition of [{p}] does not match composition of {composition.total}")
    if n_value < 1:
        raise ValidationError(f"n must be >= 1, got {n_value}")
    if n_value ** p > budget:
        raise BudgetExceeded('n^p', n_value ** p, budget)
    follow = complement_permutation(partition)
    starts = [v - 1 for v in composition.starts]
    links = [(j - 1, follow(j) - 1) for j in range(1, p + 1)]
    count = 0
    for tuple_ in itertools.product(range(n_value), repeat=p):
        first = tuple_[starts[0]]
        if any(tuple_[j] != first for j in starts):
            continue
        if all(tuple_[j] == tuple_[k] for j, k in links):
            count += 1
    return count
