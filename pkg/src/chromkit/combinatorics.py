"""Set partitions, set compositions and integer (com)positions on [n].

Every object lives on the ground set ``[n] = {1, ..., n}`` and is stored in a
canonical form, so equality is structural and enumeration orders are
reproducible run to run: set partitions are enumerated through restricted
growth strings, set compositions by refining each partition with all block
orderings.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb

from .errors import DomainError, SizeCapError, ValidationError

MAX_SET_PARTITION_N = 12
MAX_SET_COMPOSITION_N = 10


def mask_of(vertices) -> int:
    """Bitmask of a subset of [n]; label v occupies bit v - 1."""
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def set_of_mask(mask: int) -> tuple[int, ...]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def _check_blocks(n, blocks, kind):
    seen = set()
    for b in blocks:
        if not b:
            raise ValidationError(f"{kind} of [{n}] has an empty block")
        for v in b:
            if not (isinstance(v, int) and 1 <= v <= n):
                raise ValidationError(f"label {v!r} outside [{n}]")
            if v in seen:
                raise ValidationError(f"label {v} appears in two blocks")
            seen.add(v)
    if len(seen) != n:
        raise ValidationError(f"blocks do not cover [{n}]")


class SetPartition:
    """An unordered partition of [n] into non-empty disjoint blocks.

    Blocks are stored sorted internally and ordered by minimum element.
    """

    __slots__ = ("n", "blocks", "_hash")

    def __init__(self, n: int, blocks):
        blocks = tuple(tuple(sorted(b)) for b in blocks)
        _check_blocks(n, blocks, "set partition")
        self.n = n
        self.blocks = tuple(sorted(blocks, key=lambda b: b[0]))
        self._hash = hash((n, self.blocks))

    @classmethod
    def _unchecked(cls, n, canonical_blocks):
        self = object.__new__(cls)
        self.n = n
        self.blocks = canonical_blocks
        self._hash = hash((n, canonical_blocks))
        return self

    def shape(self) -> tuple[int, ...]:
        """Block sizes as a non-increasing integer partition."""
        return tuple(sorted((len(b) for b in self.blocks), reverse=True))

    def block_index(self) -> dict[int, int]:
        return {v: i for i, b in enumerate(self.blocks) for v in b}

    def __len__(self):
        return len(self.blocks)

    def __eq__(self, other):
        return (
            isinstance(other, SetPartition)
            and self.n == other.n
            and self.blocks == other.blocks
        )

    def __lt__(self, other):
        return (self.n, self.blocks) < (other.n, other.blocks)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"SetPartition({self.n}, {self.blocks!r})"

    def __str__(self):
        if not self.blocks:
            return "{}"
        return "|".join(",".join(map(str, b)) for b in self.blocks)

    def to_json_obj(self):
        return [list(b) for b in self.blocks]

    @classmethod
    def from_json_obj(cls, obj):
        blocks = [tuple(b) for b in obj]
        n = sum(len(b) for b in blocks)
        return cls(n, blocks)


class SetComposition:
    """An ordered partition of [n] into non-empty disjoint blocks."""

    __slots__ = ("n", "blocks", "_hash")

    def __init__(self, n: int, blocks):
        blocks = tuple(tuple(sorted(b)) for b in blocks)
        _check_blocks(n, blocks, "set composition")
        self.n = n
        self.blocks = blocks
        self._hash = hash((n, blocks))

    @classmethod
    def _unchecked(cls, n, canonical_blocks):
        self = object.__new__(cls)
        self.n = n
        self.blocks = canonical_blocks
        self._hash = hash((n, canonical_blocks))
        return self

    def composition_type(self) -> tuple[int, ...]:
        """Block sizes in order (the integer composition alpha)."""
        return tuple(len(b) for b in self.blocks)

    def underlying_partition(self) -> SetPartition:
        """Forget the block order (the set partition lambda)."""
        return SetPartition(self.n, self.blocks)

    def block_masks(self) -> tuple[int, ...]:
        return tuple(mask_of(b) for b in self.blocks)

    def block_index(self) -> dict[int, int]:
        return {v: i for i, b in enumerate(self.blocks) for v in b}

    def __len__(self):
        return len(self.blocks)

    def __eq__(self, other):
        return (
            isinstance(other, SetComposition)
            and self.n == other.n
            and self.blocks == other.blocks
        )

    def __lt__(self, other):
        return (self.n, self.blocks) < (other.n, other.blocks)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"SetComposition({self.n}, {self.blocks!r})"

    def __str__(self):
        if not self.blocks:
            return "()"
        return "|".join(",".join(map(str, b)) for b in self.blocks)

    def to_json_obj(self):
        return [list(b) for b in self.blocks]

    @classmethod
    def from_json_obj(cls, obj):
        blocks = [tuple(b) for b in obj]
        n = sum(len(b) for b in blocks)
        return cls(n, blocks)


def enumerate_set_partitions(n: int):
    """Yield every set partition of [n] once, in restricted-growth order."""
    if not (0 <= n <= MAX_SET_PARTITION_N):
        raise SizeCapError(f"set partition enumeration capped at n <= {MAX_SET_PARTITION_N}, got {n}")
    if n == 0:
        yield SetPartition._unchecked(0, ())
        return

    def rec(v, blocks):
        if v > n:
            yield SetPartition._unchecked(n, tuple(tuple(b) for b in blocks))
            return
        for b in blocks:
            b.append(v)
            yield from rec(v + 1, blocks)
            b.pop()
        blocks.append([v])
        yield from rec(v + 1, blocks)
        blocks.pop()

    yield from rec(2, [[1]])


def enumerate_set_compositions(n: int):
    """Yield every set composition of [n] once, grouped by underlying partition."""
    if not (0 <= n <= MAX_SET_COMPOSITION_N):
        raise SizeCapError(f"set composition enumeration capped at n <= {MAX_SET_COMPOSITION_N}, got {n}")
    for pi in enumerate_set_partitions(n):
        for perm in itertools.permutations(pi.blocks):
            yield SetComposition._unchecked(n, perm)


def coarsening_leq(a: SetPartition, b: SetPartition) -> bool:
    """True iff every block of a is contained in some block of b."""
    if a.n != b.n:
        raise DomainError(f"coarsening_leq: mismatched ground sets {a.n} != {b.n}")
    where = b.block_index()
    for blk in a.blocks:
        i = where[blk[0]]
        if any(where[v] != i for v in blk[1:]):
            return False
    return True


def minima_block(J, pc: SetComposition) -> frozenset[int]:
    """Intersection of J with its earliest-meeting block of pc.

    This is the set of minima of J in the total preorder attached to pc.
    """
    J = frozenset(J)
    if not J:
        raise DomainError("minima_block: J must be non-empty")
    if not all(1 <= v <= pc.n for v in J):
        raise DomainError(f"minima_block: J not a subset of [{pc.n}]")
    for blk in pc.blocks:
        hit = J.intersection(blk)
        if hit:
            return hit
    raise DomainError("minima_block: unreachable for a covering composition")


# ---------------------------------------------------------------------------
# Integer partitions and compositions (plain tuples).
# ---------------------------------------------------------------------------

def is_integer_partition(parts) -> bool:
    t = tuple(parts)
    return all(isinstance(p, int) and p > 0 for p in t) and all(
        t[i] >= t[i + 1] for i in range(len(t) - 1)
    )


def is_integer_composition(parts) -> bool:
    return all(isinstance(p, int) and p > 0 for p in parts)


def partitions_of_int(n: int):
    """Integer partitions of n as non-increasing tuples, in lex-descending order."""
    if n < 0:
        raise DomainError("partitions_of_int: n must be non-negative")

    def rec(remaining, largest):
        if remaining == 0:
            yield ()
            return
        for p in range(min(remaining, largest), 0, -1):
            for rest in rec(remaining - p, p):
                yield (p,) + rest

    yield from rec(n, n)


def compositions_of_int(n: int):
    """Integer compositions of n as tuples."""
    if n < 0:
        raise DomainError("compositions_of_int: n must be non-negative")
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in compositions_of_int(n - first):
            yield (first,) + rest


def count_parts_equal(parts, k: int) -> int:
    return sum(1 for p in parts if p == k)


@lru_cache(maxsize=None)
def bell_number(n: int) -> int:
    if n == 0:
        return 1
    return sum(comb(n - 1, k) * bell_number(k) for k in range(n))


@lru_cache(maxsize=None)
def ordered_bell_number(n: int) -> int:
    if n == 0:
        return 1
    return sum(comb(n, k) * ordered_bell_number(n - k) for k in range(1, n + 1))


def partition_count(n: int) -> int:
    return sum(1 for _ in partitions_of_int(n))
