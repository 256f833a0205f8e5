"""A finite-label-set Hopf monoid engine with graph, poset, and polytope instances.

Objects carry their label sets explicitly and are never relabeled inside
tensor slots; characters evaluate label-agnostically.  The iterated
coproduct peels the last block of a set composition at each step, the
multicharacter applies the character slot-wise, and summing monomials
weighted by multicharacters realizes the universal morphism into word
quasisymmetric functions.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .algebra import BasisTag, SparseElement
from .combinatorics import SetComposition, enumerate_set_compositions
from .errors import DomainError, SizeCapError, ValidationError
from .graphs import Graph
from .polytopes import HypergraphicPolytope

UNIVERSAL_MAX_N = 7
WQSYM_PRODUCT_MAX_N = 8
POSET_ENUM_MAX_N = 5


class Poset:
    """A partial order on [n]; the relation stores every pair x <= y."""

    __slots__ = ("n", "relation", "_hash")

    def __init__(self, n: int, relation=()):
        rel = {(v, v) for v in range(1, n + 1)}
        for a, b in relation:
            if not (1 <= a <= n and 1 <= b <= n):
                raise ValidationError(f"pair ({a}, {b}) outside [{n}]")
            rel.add((a, b))
        for a, b in rel:
            if a != b and (b, a) in rel:
                raise ValidationError(f"antisymmetry fails on ({a}, {b})")
        for a, b in rel:
            for c, d in rel:
                if b == c and (a, d) not in rel:
                    raise ValidationError(f"transitivity fails: ({a},{b}) and ({c},{d})")
        self.n = n
        self.relation = frozenset(rel)
        self._hash = hash((n, tuple(sorted(rel))))

    def strict_pairs(self):
        return sorted((a, b) for a, b in self.relation if a != b)

    def is_antichain(self) -> bool:
        return all(a == b for a, b in self.relation)

    def __eq__(self, other):
        return isinstance(other, Poset) and self.n == other.n and self.relation == other.relation

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Poset({self.n}, {self.strict_pairs()!r})"

    def to_json_obj(self):
        return {"n": self.n, "leq": [list(p) for p in self.strict_pairs()]}

    @classmethod
    def from_json_obj(cls, obj):
        return cls(obj["n"], [tuple(p) for p in obj["leq"]])


def enumerate_posets(n: int):
    """All partial orders on [n], by orienting each vertex pair three ways."""
    if not (0 <= n <= POSET_ENUM_MAX_N):
        raise SizeCapError(f"poset enumeration capped at n <= {POSET_ENUM_MAX_N}, got {n}")
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for choice in itertools.product((0, 1, 2), repeat=len(pairs)):
        rel = set()
        for (a, b), c in zip(pairs, choice):
            if c == 1:
                rel.add((a, b))
            elif c == 2:
                rel.add((b, a))
        transitive = True
        for a, b in rel:
            for c, d in rel:
                if b == c and a != d and (a, d) not in rel:
                    transitive = False
                    break
            if not transitive:
                break
        if transitive:
            yield Poset(n, rel)


# ---------------------------------------------------------------------------
# Instances on arbitrary label sets.
# ---------------------------------------------------------------------------

def _eta_graph(value) -> int:
    edges = value
    return 1 if not edges else 0


def _eta_poset(value) -> int:
    return 1 if all(a == b for a, b in value) else 0


def _eta_hgp(value) -> int:
    return 1 if all(len(J) == 1 for J in value) else 0


_DEFAULT_ETA = {"graph": _eta_graph, "poset": _eta_poset, "hgp": _eta_hgp}


def _normal_value(kind, value):
    if kind == "graph":
        return tuple(sorted(tuple(sorted(e)) for e in value))
    if kind == "poset":
        return tuple(sorted(value))
    if kind == "hgp":
        return tuple(sorted((tuple(sorted(J)), a) for J, a in value.items()))
    raise DomainError(f"unknown Hopf instance kind {kind!r}")


class HopfInstance:
    """One basis object of a combinatorial Hopf monoid, on explicit labels.

    kind is one of  graph (value: frozenset of 2-element frozensets),
    poset (value: frozenset of ordered pairs, reflexive pairs included) and
    hgp (value: dict from non-empty frozenset to positive Fraction).
    """

    __slots__ = ("kind", "labels", "value", "eta", "_normal", "_hash")

    def __init__(self, kind, labels, value, eta=None):
        self.kind = kind
        self.labels = frozenset(labels)
        self.value = value
        self.eta = eta if eta is not None else _DEFAULT_ETA[kind]
        self._normal = _normal_value(kind, value)
        self._hash = hash((kind, self.labels, self._normal))

    def character(self) -> int:
        return self.eta(self.value)

    def __eq__(self, other):
        return (
            isinstance(other, HopfInstance)
            and self.kind == other.kind
            and self.labels == other.labels
            and self._normal == other._normal
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"HopfInstance({self.kind!r}, {sorted(self.labels)}, {self._normal!r})"


def graph_on(labels, edges) -> HopfInstance:
    labels = frozenset(labels)
    es = frozenset(frozenset(e) for e in edges)
    for e in es:
        if len(e) != 2 or not e <= labels:
            raise ValidationError(f"edge {sorted(e)} not on labels {sorted(labels)}")
    return HopfInstance("graph", labels, es)


def poset_on(labels, relation) -> HopfInstance:
    labels = frozenset(labels)
    rel = {(v, v) for v in labels}
    for a, b in relation:
        if a not in labels or b not in labels:
            raise ValidationError(f"pair ({a}, {b}) not on labels {sorted(labels)}")
        rel.add((a, b))
    return HopfInstance("poset", labels, frozenset(rel))


def polytope_on(labels, coeffs) -> HopfInstance:
    labels = frozenset(labels)
    clean = {}
    for J, a in coeffs.items():
        J = frozenset(J)
        a = Fraction(a)
        if not J or not J <= labels:
            raise ValidationError(f"subset {sorted(J)} not on labels {sorted(labels)}")
        if a != 0:
            clean[J] = clean.get(J, Fraction(0)) + a
    return HopfInstance("hgp", labels, {J: a for J, a in clean.items() if a})


def graph_instance(G: Graph) -> HopfInstance:
    return graph_on(range(1, G.n + 1), G.edges)


def poset_instance(P: Poset) -> HopfInstance:
    return poset_on(range(1, P.n + 1), P.relation)


def polytope_instance(q: HypergraphicPolytope) -> HopfInstance:
    if not q.is_hypergraphic():
        raise DomainError("Hopf instances need non-negative polytope coefficients")
    return polytope_on(range(1, q.n + 1), q.coeffs)


def relabel_instance(x: HopfInstance, mapping) -> HopfInstance:
    labels = frozenset(mapping[v] for v in x.labels)
    if x.kind == "graph":
        value = frozenset(frozenset(mapping[v] for v in e) for e in x.value)
    elif x.kind == "poset":
        value = frozenset((mapping[a], mapping[b]) for a, b in x.value)
    else:
        value = {frozenset(mapping[v] for v in J): a for J, a in x.value.items()}
    return HopfInstance(x.kind, labels, value, x.eta)


def instance_product(x: HopfInstance, y: HopfInstance) -> HopfInstance:
    """Monoid product of objects on disjoint label sets."""
    if x.kind != y.kind:
        raise DomainError(f"cannot multiply {x.kind} with {y.kind}")
    if x.labels & y.labels:
        raise DomainError("product requires disjoint label sets")
    labels = x.labels | y.labels
    if x.kind == "graph":
        value = x.value | y.value
    elif x.kind == "poset":
        value = x.value | y.value
    else:
        value = dict(x.value)
        value.update(y.value)
    return HopfInstance(x.kind, labels, value, x.eta)


# ---------------------------------------------------------------------------
# Coproducts.
# ---------------------------------------------------------------------------

def _split_value(x: HopfInstance, I: frozenset, J: frozenset):
    if x.kind == "graph":
        left = frozenset(e for e in x.value if e <= I)
        right = frozenset(e for e in x.value if e <= J)
        return left, right
    if x.kind == "poset":
        for a, b in x.value:
            if a in I and b in J:
                return None
        left = frozenset(p for p in x.value if p[0] in I and p[1] in I)
        right = frozenset(p for p in x.value if p[0] in J and p[1] in J)
        return left, right
    # Polytope: restriction keeps every subset meeting I, cut down to I;
    # contraction keeps the subsets inside J.
    left: dict = {}
    right: dict = {}
    for S, a in x.value.items():
        if S <= J:
            right[S] = right.get(S, Fraction(0)) + a
        else:
            cut = S & I
            left[cut] = left.get(cut, Fraction(0)) + a
    return left, right


def coproduct_part(x: HopfInstance, I, J):
    """The (I, J) component of the coproduct, or None for the zero term.

    Graphs and polytopes always split; posets split only when I is an ideal
    (x in I and x <= y force y in I).
    """
    I = frozenset(I)
    J = frozenset(J)
    if I & J or (I | J) != x.labels:
        raise DomainError("coproduct_part needs a two-block partition of the labels")
    split = _split_value(x, I, J)
    if split is None:
        return None
    left, right = split
    return HopfInstance(x.kind, I, left, x.eta), HopfInstance(x.kind, J, right, x.eta)


class TensorSlot:
    """Objects aligned with the blocks of a set composition."""

    __slots__ = ("blocks", "slots")

    def __init__(self, blocks, slots):
        blocks = tuple(tuple(sorted(b)) for b in blocks)
        slots = tuple(slots)
        if len(blocks) != len(slots):
            raise ValidationError("one object per block required")
        for b, obj in zip(blocks, slots):
            if frozenset(b) != obj.labels:
                raise ValidationError(f"object labels {sorted(obj.labels)} differ from block {b}")
        self.blocks = blocks
        self.slots = slots

    def __iter__(self):
        return iter(self.slots)

    def __len__(self):
        return len(self.slots)

    def __eq__(self, other):
        return (
            isinstance(other, TensorSlot)
            and self.blocks == other.blocks
            and self.slots == other.slots
        )

    def __repr__(self):
        return f"TensorSlot({self.blocks!r}, {self.slots!r})"


def _delta_blocks(x: HopfInstance, blocks):
    if len(blocks) == 0:
        if x.labels:
            raise DomainError("empty composition only splits the empty object")
        return ()
    if len(blocks) == 1:
        return (x,)
    last = frozenset(blocks[-1])
    rest = x.labels - last
    split = coproduct_part(x, rest, last)
    if split is None:
        return None
    head, tail = split
    front = _delta_blocks(head, blocks[:-1])
    if front is None:
        return None
    return front + (tail,)


def delta_pi(x: HopfInstance, pc: SetComposition):
    """Iterated coproduct along pc, peeling the last block at each step.

    Returns None for the zero term.
    """
    if {v for b in pc.blocks for v in b} != x.labels:
        raise DomainError("composition must partition the instance labels")
    slots = _delta_blocks(x, pc.blocks)
    if slots is None:
        return None
    return TensorSlot(pc.blocks, slots)


def multicharacter(x: HopfInstance, pc: SetComposition) -> Fraction:
    """Character applied slot-wise to the iterated coproduct; zero on zero terms.

    Peels right to left like the iterated coproduct but evaluates each slot
    as it splits off, so a vanishing slot aborts the remaining splits.
    """
    if {v for b in pc.blocks for v in b} != x.labels:
        raise DomainError("composition must partition the instance labels")
    blocks = pc.blocks
    if not blocks:
        return Fraction(1)
    current = x
    out = 1
    for i in range(len(blocks) - 1, 0, -1):
        tail = frozenset(blocks[i])
        split = coproduct_part(current, current.labels - tail, tail)
        if split is None:
            return Fraction(0)
        current, slot = split
        out *= slot.character()
        if out == 0:
            return Fraction(0)
    return Fraction(out * current.character())


def universal_upsilon(x: HopfInstance) -> SparseElement:
    """The universal morphism into WQSym: multicharacters against monomials."""
    n = len(x.labels)
    if x.labels != frozenset(range(1, n + 1)):
        raise DomainError("universal_upsilon expects labels [n]")
    if n > UNIVERSAL_MAX_N:
        raise SizeCapError(f"universal_upsilon capped at n <= {UNIVERSAL_MAX_N}, got {n}")
    terms = {}
    for pc in enumerate_set_compositions(n):
        c = multicharacter(x, pc)
        if c:
            terms[pc] = c
    return SparseElement(BasisTag.WQSYM_M, n, terms)


# ---------------------------------------------------------------------------
# WQSym structure maps.
# ---------------------------------------------------------------------------

def _quasi_shuffles(pa, pb):
    if not pa:
        yield pb
        return
    if not pb:
        yield pa
        return
    ha, ta = pa[0], pa[1:]
    hb, tb = pb[0], pb[1:]
    for rest in _quasi_shuffles(ta, pb):
        yield (ha,) + rest
    for rest in _quasi_shuffles(pa, tb):
        yield (hb,) + rest
    merged = tuple(sorted(ha + hb))
    for rest in _quasi_shuffles(ta, tb):
        yield (merged,) + rest


def wqsym_product(a: SparseElement, b: SparseElement) -> SparseElement:
    """Product of monomial elements; the right factor is shifted past [n].

    Each pair of monomials expands over the compositions restricting to both
    factors (block quasi-shuffles, merges included).
    """
    if a.basis is not BasisTag.WQSYM_M or b.basis is not BasisTag.WQSYM_M:
        raise DomainError("wqsym_product expects WQSym monomial elements")
    n, m = a.n, b.n
    if n + m > WQSYM_PRODUCT_MAX_N:
        raise SizeCapError(f"wqsym_product capped at degree {WQSYM_PRODUCT_MAX_N}, got {n + m}")
    pairs = []
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            shifted = tuple(tuple(v + n for v in blk) for blk in kb.blocks)
            for blocks in _quasi_shuffles(ka.blocks, shifted):
                pairs.append((SetComposition._unchecked(n + m, blocks), ca * cb))
    return SparseElement.from_terms(BasisTag.WQSYM_M, n + m, pairs)


def _standardize_blocks(blocks, subset):
    sub = sorted(subset)
    rl = {v: i + 1 for i, v in enumerate(sub)}
    out = []
    for blk in blocks:
        kept = tuple(sorted(rl[v] for v in blk if v in subset))
        if kept:
            out.append(kept)
    return SetComposition._unchecked(len(sub), tuple(out))


def wqsym_coproduct(x: SparseElement, I, J) -> dict:
    """The (I, J) coproduct component, monomials restricted and standardized.

    A monomial survives only when every label of I sits in a strictly
    earlier block than every label of J; the result maps standardized key
    pairs to coefficients, empty when the component is zero.
    """
    if x.basis is not BasisTag.WQSYM_M:
        raise DomainError("wqsym_coproduct expects a WQSym monomial element")
    I = frozenset(I)
    J = frozenset(J)
    if I & J or (I | J) != frozenset(range(1, x.n + 1)):
        raise DomainError("wqsym_coproduct needs a two-block partition of [n]")
    out: dict = {}
    for key, coeff in x.terms.items():
        if I and J:
            index = key.block_index()
            if max(index[v] for v in I) >= min(index[v] for v in J):
                continue
        pair = (_standardize_blocks(key.blocks, I), _standardize_blocks(key.blocks, J))
        out[pair] = out.get(pair, Fraction(0)) + coeff
    return {k: v for k, v in out.items() if v != 0}


def eta0_value(x: SparseElement) -> Fraction:
    """Apply the terminal character: keep monomials with at most one block."""
    if x.basis is not BasisTag.WQSYM_M:
        raise DomainError("eta0_value expects a WQSym monomial element")
    return sum(
        (c for k, c in x.terms.items() if len(k.blocks) <= 1),
        Fraction(0),
    )
