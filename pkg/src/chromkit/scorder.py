"""The singleton-commuting preorder on set compositions and its classes.

A set composition is below another when every subset of [n] whose minima set
is a singleton in the first also has a singleton minima set in the second.
The two-sided relation is an equivalence whose classes are counted by the
``sc_n`` sequence; classes biject with integral barred set compositions
(IBSCs), obtained by squeezing maximal runs of consecutive singleton blocks
into barred blocks.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .combinatorics import (
    SetComposition,
    _check_blocks,
    enumerate_set_compositions,
)
from .errors import DomainError, SizeCapError, ValidationError

SC_CLASSES_MAX_N = 9
COMPOSITION_ORDER_MAX_N = 7


@lru_cache(maxsize=100_000)
def singleton_family(pc: SetComposition) -> frozenset[int]:
    """Masks of the non-empty subsets of [n] whose minima set in pc is a singleton."""
    bmasks = pc.block_masks()
    fam = []
    for a in range(1, 1 << pc.n):
        for b in bmasks:
            hit = a & b
            if hit:
                if hit & (hit - 1) == 0:
                    fam.append(a)
                break
    return frozenset(fam)


@lru_cache(maxsize=100_000)
def singleton_family_bits(pc: SetComposition) -> int:
    """singleton_family packed into one integer: bit (a - 1) per subset mask a."""
    bits = 0
    for a in singleton_family(pc):
        bits |= 1 << (a - 1)
    return bits


def sc_preorder_leq(a: SetComposition, b: SetComposition) -> bool:
    """True iff singleton minima sets transfer from a to b."""
    if a.n != b.n:
        raise DomainError(f"sc_preorder_leq: mismatched ground sets {a.n} != {b.n}")
    fa = singleton_family_bits(a)
    return fa & ~singleton_family_bits(b) == 0


def sc_equivalent(a: SetComposition, b: SetComposition) -> bool:
    """Two-sided singleton-commuting comparison (the definitional route)."""
    if a.n != b.n:
        raise DomainError(f"sc_equivalent: mismatched ground sets {a.n} != {b.n}")
    return singleton_family_bits(a) == singleton_family_bits(b)


def sc_equivalent_structural(a: SetComposition, b: SetComposition) -> bool:
    """Block-structure characterization of the equivalence.

    Same underlying set partition, and every pair ordered one way in a and
    the other way in b consists of two singleton blocks or lies in one block.
    Cross-checked against :func:`sc_equivalent` in the test suite.
    """
    if a.n != b.n:
        raise DomainError(f"sc_equivalent_structural: mismatched ground sets {a.n} != {b.n}")
    pa = a.underlying_partition()
    if pa != b.underlying_partition():
        return False
    ia = a.block_index()
    ib = b.block_index()
    part_index = pa.block_index()
    singleton = {blk[0] for blk in pa.blocks if len(blk) == 1}
    for x in range(1, a.n + 1):
        for y in range(1, a.n + 1):
            if x == y:
                continue
            if ia[x] <= ia[y] and ib[y] <= ib[x]:
                if part_index[x] == part_index[y]:
                    continue
                if x in singleton and y in singleton:
                    continue
                return False
    return True


def sc_canonical_member(pc: SetComposition) -> SetComposition:
    """Lexicographically least member of the class of pc.

    Sorts every maximal run of consecutive singleton blocks ascending; the
    remaining blocks are frozen by the equivalence.
    """
    blocks = pc.blocks
    out = []
    i = 0
    while i < len(blocks):
        if len(blocks[i]) == 1:
            j = i
            while j < len(blocks) and len(blocks[j]) == 1:
                j += 1
            for v in sorted(b[0] for b in blocks[i:j]):
                out.append((v,))
            i = j
        else:
            out.append(blocks[i])
            i += 1
    return SetComposition._unchecked(pc.n, tuple(out))


class SCClass:
    """One equivalence class of the singleton-commuting relation."""

    __slots__ = ("n", "representative", "members", "_hash")

    def __init__(self, n: int, members):
        members = tuple(sorted(members))
        if not members:
            raise ValidationError("SCClass needs at least one member")
        if any(m.n != n for m in members):
            raise ValidationError("SCClass members on mixed ground sets")
        self.n = n
        self.members = members
        self.representative = members[0]
        self._hash = hash((n, members))

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        return (
            isinstance(other, SCClass)
            and self.n == other.n
            and self.members == other.members
        )

    def __lt__(self, other):
        return self.representative < other.representative

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"SCClass({self.n}, {self.members!r})"

    def __str__(self):
        return "{" + ", ".join(str(m) for m in self.members) + "}"

    def to_json_obj(self):
        return {
            "representative": self.representative.to_json_obj(),
            "members": [m.to_json_obj() for m in self.members],
        }


def sc_classes(n: int) -> list[SCClass]:
    """All classes of C_n, grouped by canonical member, sorted by representative."""
    if not (0 <= n <= SC_CLASSES_MAX_N):
        raise SizeCapError(f"sc_classes capped at n <= {SC_CLASSES_MAX_N}, got {n}")
    groups: dict[SetComposition, list[SetComposition]] = {}
    for pc in enumerate_set_compositions(n):
        groups.setdefault(sc_canonical_member(pc), []).append(pc)
    return sorted(SCClass(n, ms) for ms in groups.values())


def sc_class_count(n: int) -> int:
    """Number of classes of C_n, streaming canonical keys (no member storage)."""
    if not (0 <= n <= SC_CLASSES_MAX_N):
        raise SizeCapError(f"sc_class_count capped at n <= {SC_CLASSES_MAX_N}, got {n}")
    seen = set()
    for pc in enumerate_set_compositions(n):
        seen.add(sc_canonical_member(pc))
    return len(seen)


# ---------------------------------------------------------------------------
# Barred set compositions.
# ---------------------------------------------------------------------------

class BarredSetComposition:
    """A set composition whose blocks may carry a bar.

    Integral means no two consecutive barred blocks and every singleton
    block barred.
    """

    __slots__ = ("n", "blocks", "_hash")

    def __init__(self, n: int, blocks):
        norm = tuple((tuple(sorted(b)), bool(flag)) for b, flag in blocks)
        _check_blocks(n, [b for b, _ in norm], "barred set composition")
        self.n = n
        self.blocks = norm
        self._hash = hash((n, norm))

    def is_integral(self) -> bool:
        prev_barred = False
        for b, barred in self.blocks:
            if barred and prev_barred:
                return False
            if len(b) == 1 and not barred:
                return False
            prev_barred = barred
        return True

    def __eq__(self, other):
        return (
            isinstance(other, BarredSetComposition)
            and self.n == other.n
            and self.blocks == other.blocks
        )

    def __lt__(self, other):
        return (self.n, self.blocks) < (other.n, other.blocks)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"BarredSetComposition({self.n}, {self.blocks!r})"

    def __str__(self):
        if not self.blocks:
            return "()"
        parts = []
        for b, barred in self.blocks:
            s = ",".join(map(str, b))
            parts.append(f"[{s}]" if barred else s)
        return "|".join(parts)

    def to_json_obj(self):
        return [{"b" if barred else "u": list(b)} for b, barred in self.blocks]

    @classmethod
    def from_json_obj(cls, obj):
        blocks = []
        for entry in obj:
            if "b" in entry:
                blocks.append((tuple(entry["b"]), True))
            elif "u" in entry:
                blocks.append((tuple(entry["u"]), False))
            else:
                raise ValidationError(f"bad barred block {entry!r}")
        n = sum(len(b) for b, _ in blocks)
        return cls(n, blocks)


def enumerate_ibscs(n: int):
    """Yield every integral barred set composition of [n] once."""
    if not (0 <= n <= SC_CLASSES_MAX_N):
        raise SizeCapError(f"IBSC enumeration capped at n <= {SC_CLASSES_MAX_N}, got {n}")

    def rec(remaining, prev_barred):
        if not remaining:
            yield ()
            return
        rem = tuple(remaining)
        for size in range(1, len(rem) + 1):
            for block in itertools.combinations(rem, size):
                rest = tuple(v for v in rem if v not in block)
                if size >= 2:
                    for tail in rec(rest, False):
                        yield ((block, False),) + tail
                if not prev_barred:
                    for tail in rec(rest, True):
                        yield ((block, True),) + tail

    for blocks in rec(tuple(range(1, n + 1)), False):
        yield BarredSetComposition(n, blocks)


def class_from_ibsc(b: BarredSetComposition) -> SCClass:
    """Split every barred block into consecutive singletons, in all orders."""
    if not b.is_integral():
        raise ValidationError(f"barred set composition {b} is not integral")
    choice_lists = []
    for blk, barred in b.blocks:
        if barred:
            choice_lists.append([tuple((v,) for v in p) for p in itertools.permutations(blk)])
        else:
            choice_lists.append([(blk,)])
    members = []
    for combo in itertools.product(*choice_lists):
        blocks = tuple(itertools.chain.from_iterable(combo))
        members.append(SetComposition._unchecked(b.n, blocks))
    return SCClass(b.n, members)


def ibsc_from_class(c: SCClass) -> BarredSetComposition:
    """Squeeze maximal runs of consecutive singleton blocks into barred blocks."""
    blocks = c.representative.blocks
    out = []
    i = 0
    while i < len(blocks):
        if len(blocks[i]) == 1:
            j = i
            while j < len(blocks) and len(blocks[j]) == 1:
                j += 1
            out.append((tuple(sorted(b[0] for b in blocks[i:j])), True))
            i = j
        else:
            out.append((blocks[i], False))
            i += 1
    return BarredSetComposition(c.n, out)


def ibsc_roundtrip(x):
    """Map an IBSC to its class or a class to its IBSC."""
    if isinstance(x, BarredSetComposition):
        return class_from_ibsc(x)
    if isinstance(x, SCClass):
        return ibsc_from_class(x)
    raise DomainError(f"ibsc_roundtrip: unsupported input {type(x).__name__}")


# ---------------------------------------------------------------------------
# The projected order on integer compositions.
# ---------------------------------------------------------------------------

def _consecutive_composition(alpha) -> SetComposition:
    blocks = []
    v = 1
    for part in alpha:
        blocks.append(tuple(range(v, v + part)))
        v += part
    return SetComposition._unchecked(sum(alpha), tuple(blocks))


def _compositions_of_type(n, alpha):
    """All set compositions of [n] with block sizes alpha."""

    def rec(remaining, parts):
        if not parts:
            yield ()
            return
        size = parts[0]
        rem = tuple(remaining)
        for block in itertools.combinations(rem, size):
            rest = tuple(v for v in rem if v not in block)
            for tail in rec(rest, parts[1:]):
                yield (block,) + tail

    for blocks in rec(tuple(range(1, n + 1)), tuple(alpha)):
        yield SetComposition._unchecked(n, blocks)


def composition_leq_prime(a, b) -> bool:
    """Projected singleton-commuting order on integer compositions.

    Decided by exhaustive search: true iff some set compositions with types
    a and b compare in the SC preorder.  One representative suffices on the
    left because the preorder is equivariant under relabeling.
    """
    a = tuple(a)
    b = tuple(b)
    for t in (a, b):
        if not all(isinstance(p, int) and p > 0 for p in t):
            raise ValidationError(f"not an integer composition: {t!r}")
    if sum(a) != sum(b):
        raise DomainError(f"composition_leq_prime: mismatched totals {sum(a)} != {sum(b)}")
    n = sum(a)
    if n > COMPOSITION_ORDER_MAX_N:
        raise SizeCapError(f"composition_leq_prime capped at total <= {COMPOSITION_ORDER_MAX_N}, got {n}")
    left = _consecutive_composition(a) if a else SetComposition._unchecked(0, ())
    fl = singleton_family_bits(left)
    for tau in _compositions_of_type(n, b):
        if fl & ~singleton_family_bits(tau) == 0:
            return True
    return False
