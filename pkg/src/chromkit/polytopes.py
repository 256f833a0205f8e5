"""Hypergraphic polytopes as non-negative subset-coefficient lists.

A polytope is a formal Minkowski sum of simplices, one rational coefficient
per non-empty subset of [n]; sums of polytopes are coefficient-wise.  Faces
along a set composition replace every subset by its minima set, so
genericity, the chromatic map, and the whole kernel machinery reduce to
minima bookkeeping on the support family.  Negative coefficients can be
stored (generalized permutahedron data) but every face-level operation
rejects them.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .algebra import BasisTag, SparseElement, comu
from .combinatorics import (
    SetComposition,
    enumerate_set_compositions,
    mask_of,
    minima_block,
    set_of_mask,
)
from .errors import ChromkitError, DomainError, SizeCapError, ValidationError
from .scorder import (
    SCClass,
    sc_classes,
    singleton_family,
    singleton_family_bits,
)

UPSILON_HGP_MAX_N = 8
REDUCE_BASIC_MAX_N = 6
MODULAR_B_FAMILY_MAX = 16


class HypergraphicPolytope:
    """Subset-coefficient data for a Minkowski sum of simplices on [n]."""

    __slots__ = ("n", "coeffs", "_key", "_hash")

    def __init__(self, n: int, coeffs=None):
        clean: dict[frozenset, Fraction] = {}
        for J, a in (coeffs or {}).items():
            J = frozenset(J)
            if not J:
                raise ValidationError("empty subset in polytope data")
            if not all(isinstance(v, int) and 1 <= v <= n for v in J):
                raise ValidationError(f"subset {sorted(J)} outside [{n}]")
            a = Fraction(a)
            if a == 0:
                continue
            clean[J] = clean.get(J, Fraction(0)) + a
        self.n = n
        self.coeffs = {J: a for J, a in clean.items() if a != 0}
        self._key = tuple(sorted((mask_of(J), a) for J, a in self.coeffs.items()))
        self._hash = hash((n, self._key))

    @classmethod
    def from_support(cls, n: int, family) -> "HypergraphicPolytope":
        """Fundamental polytope with coefficient one on each family member."""
        return cls(n, {frozenset(J): Fraction(1) for J in family})

    def is_hypergraphic(self) -> bool:
        return all(a > 0 for a in self.coeffs.values())

    def is_fundamental(self) -> bool:
        return all(a == 1 for a in self.coeffs.values())

    def support(self) -> frozenset:
        """The family of subsets with positive coefficient."""
        return frozenset(J for J, a in self.coeffs.items() if a > 0)

    def support_masks(self) -> tuple[int, ...]:
        return tuple(sorted(mask_of(J) for J, a in self.coeffs.items() if a > 0))

    def support_bits(self) -> int:
        bits = 0
        for m in self.support_masks():
            bits |= 1 << (m - 1)
        return bits

    def is_point(self) -> bool:
        return all(len(J) == 1 for J in self.coeffs)

    def minkowski_add(self, other: "HypergraphicPolytope") -> "HypergraphicPolytope":
        if self.n != other.n:
            raise DomainError(f"minkowski_add: mismatched ambient [{self.n}] vs [{other.n}]")
        acc = dict(self.coeffs)
        for J, a in other.coeffs.items():
            acc[J] = acc.get(J, Fraction(0)) + a
        return HypergraphicPolytope(self.n, acc)

    def __eq__(self, other):
        return (
            isinstance(other, HypergraphicPolytope)
            and self.n == other.n
            and self._key == other._key
        )

    def __lt__(self, other):
        return (self.n, self._key) < (other.n, other._key)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        body = " + ".join(
            f"{a}*s{sorted(J)}" for J, a in sorted(self.coeffs.items(), key=lambda t: mask_of(t[0]))
        )
        return f"HypergraphicPolytope({self.n}: {body or 'point'})"

    def to_json_obj(self):
        items = sorted(self.coeffs.items(), key=lambda t: (len(t[0]), sorted(t[0])))
        return {
            "n": self.n,
            "coeffs": [{"set": sorted(J), "a": str(a)} for J, a in items],
        }

    @classmethod
    def from_json_obj(cls, obj):
        return cls(obj["n"], {frozenset(e["set"]): Fraction(e["a"]) for e in obj["coeffs"]})


def _require_hypergraphic(q: HypergraphicPolytope, op: str):
    if not q.is_hypergraphic():
        raise DomainError(f"{op} needs non-negative coefficients (hypergraphic polytope)")


class FaceResult:
    """A face along a set composition, re-expressed with merged minima sets."""

    __slots__ = ("polytope", "is_point")

    def __init__(self, polytope: HypergraphicPolytope, is_point: bool):
        self.polytope = polytope
        self.is_point = is_point

    def __eq__(self, other):
        return (
            isinstance(other, FaceResult)
            and self.polytope == other.polytope
            and self.is_point == other.is_point
        )

    def __repr__(self):
        return f"FaceResult({self.polytope!r}, is_point={self.is_point})"


def face(q: HypergraphicPolytope, pc: SetComposition) -> FaceResult:
    """Replace every support subset by its minima set, merging coefficients."""
    if q.n != pc.n:
        raise DomainError(f"face: polytope on [{q.n}] vs composition of [{pc.n}]")
    _require_hypergraphic(q, "face")
    merged: dict[frozenset, Fraction] = {}
    for J, a in q.coeffs.items():
        m = minima_block(J, pc)
        merged[m] = merged.get(m, Fraction(0)) + a
    result = HypergraphicPolytope(q.n, merged)
    return FaceResult(result, result.is_point())


def is_generic(q: HypergraphicPolytope, pc: SetComposition) -> bool:
    """True iff every support subset has a singleton minima set along pc."""
    if q.n != pc.n:
        raise DomainError(f"is_generic: polytope on [{q.n}] vs composition of [{pc.n}]")
    _require_hypergraphic(q, "is_generic")
    bmasks = pc.block_masks()
    for a in q.support_masks():
        for b in bmasks:
            hit = a & b
            if hit:
                if hit & (hit - 1):
                    return False
                break
    return True


def upsilon_hgp(q: HypergraphicPolytope) -> SparseElement:
    """Chromatic map into WQSym: sum over generic set compositions."""
    if q.n > UPSILON_HGP_MAX_N:
        raise SizeCapError(f"upsilon_hgp capped at n <= {UPSILON_HGP_MAX_N}, got {q.n}")
    _require_hypergraphic(q, "upsilon_hgp")
    support = q.support_bits()
    terms = {}
    for pc in enumerate_set_compositions(q.n):
        if support & ~singleton_family_bits(pc) == 0:
            terms[pc] = 1
    return SparseElement(BasisTag.WQSYM_M, q.n, terms)


def psi_hgp(q: HypergraphicPolytope) -> SparseElement:
    """Chromatic quasisymmetric function, in the QSym monomial basis."""
    return comu(upsilon_hgp(q))


def basic_polytope(pc: SetComposition) -> HypergraphicPolytope:
    """Fundamental polytope supported on the subsets with singleton minima."""
    if pc.n > UPSILON_HGP_MAX_N:
        raise SizeCapError(f"basic_polytope capped at n <= {UPSILON_HGP_MAX_N}, got {pc.n}")
    return HypergraphicPolytope.from_support(
        pc.n, (set_of_mask(m) for m in singleton_family(pc))
    )


def n_basis_element(c: SCClass) -> SparseElement:
    """Indicator sum of the monomials over one equivalence class."""
    if c.n > UPSILON_HGP_MAX_N:
        raise SizeCapError(f"n_basis_element capped at n <= {UPSILON_HGP_MAX_N}, got {c.n}")
    return SparseElement(BasisTag.WQSYM_M, c.n, {m: 1 for m in c.members})


# ---------------------------------------------------------------------------
# Modular relations.
# ---------------------------------------------------------------------------

class ModularRelationHGP:
    """Families (A, B) whose covering condition makes the signed sum vanish.

    K is the set of compositions with a non-singleton minima set on some
    member of A; J those with a singleton minima set on some member of B.
    Construction verifies K union J covers all compositions of [n].
    """

    __slots__ = ("n", "A_family", "B_family")

    def __init__(self, n: int, A_family, B_family):
        A = frozenset(frozenset(s) for s in A_family)
        B = frozenset(frozenset(s) for s in B_family)
        for fam, name in ((A, "A"), (B, "B")):
            for s in fam:
                if not s or not all(1 <= v <= n for v in s):
                    raise ValidationError(f"{name}-family member {sorted(s)} invalid on [{n}]")
        if A & B:
            raise ValidationError("families must be disjoint")
        a_masks = [mask_of(s) for s in A]
        b_masks = [mask_of(s) for s in B]
        for pc in enumerate_set_compositions(n):
            bits = singleton_family_bits(pc)
            in_k = any(bits >> (m - 1) & 1 == 0 for m in a_masks)
            in_j = any(bits >> (m - 1) & 1 for m in b_masks)
            if not (in_k or in_j):
                raise ValidationError(
                    f"covering condition fails: composition {pc} lies in neither family"
                )
        self.n = n
        self.A_family = A
        self.B_family = B

    def __repr__(self):
        a = sorted(sorted(s) for s in self.A_family)
        b = sorted(sorted(s) for s in self.B_family)
        return f"ModularRelationHGP({self.n}, {a}, {b})"


def modular_relation_hgp(rel: ModularRelationHGP) -> dict[HypergraphicPolytope, Fraction]:
    """The signed sum over subsets of the B-family, as a polytope combination."""
    if len(rel.B_family) > MODULAR_B_FAMILY_MAX:
        raise SizeCapError(
            f"modular relation expansion capped at |B| <= {MODULAR_B_FAMILY_MAX}"
        )
    base = HypergraphicPolytope.from_support(rel.n, rel.A_family)
    combo: dict[HypergraphicPolytope, Fraction] = {}
    b_sorted = sorted(rel.B_family, key=mask_of)
    for r in range(len(b_sorted) + 1):
        for subset in itertools.combinations(b_sorted, r):
            q = base.minkowski_add(HypergraphicPolytope.from_support(rel.n, subset))
            sign = Fraction(-1 if r % 2 else 1)
            combo[q] = combo.get(q, Fraction(0)) + sign
    return {q: c for q, c in combo.items() if c != 0}


def upsilon_of_combination(combo) -> SparseElement:
    """Apply the chromatic map linearly to a polytope combination."""
    ns = {q.n for q in combo}
    if len(ns) != 1:
        raise DomainError(f"mixed ambient spaces in combination: {sorted(ns)}")
    n = ns.pop()
    out = SparseElement.zero(BasisTag.WQSYM_M, n)
    for q, c in sorted(combo.items()):
        out = out + upsilon_hgp(q).scale(c)
    return out


# ---------------------------------------------------------------------------
# Reduction to the basic basis.
# ---------------------------------------------------------------------------

@lru_cache(maxsize=8)
def _class_order_data(n: int):
    """Classes of C_n, strict-precedence lists, a linear extension, and the
    chromatic images of the basic polytopes."""
    classes = sc_classes(n)
    fam = [singleton_family_bits(c.representative) for c in classes]
    preceded_by = []  # indices of classes strictly below each class
    for i in range(len(classes)):
        below = [
            j
            for j in range(len(classes))
            if j != i and fam[j] & ~fam[i] == 0
        ]
        preceded_by.append(tuple(below))
    # Kahn's algorithm with lexicographic tie-breaking on representatives.
    remaining = set(range(len(classes)))
    order = []
    while remaining:
        ready = [i for i in remaining if all(j not in remaining for j in preceded_by[i])]
        if not ready:
            raise ChromkitError("class order is not acyclic")
        nxt = min(ready, key=lambda i: classes[i].representative.blocks)
        order.append(nxt)
        remaining.discard(nxt)
    basic_images = tuple(upsilon_hgp(basic_polytope(c.representative)) for c in classes)
    return classes, fam, tuple(preceded_by), tuple(order), basic_images


def reduce_to_basic_basis(q: HypergraphicPolytope) -> dict[SCClass, Fraction]:
    """Coefficients of the chromatic image over the basic-polytope family.

    Solved triangularly along a linear extension of the class order:
    the coefficient at a class is its genericity indicator minus the
    coefficients already assigned strictly below it.  The identity
    sum(zeta * image of basic polytope) = image of q is re-checked exactly.
    """
    if q.n > REDUCE_BASIC_MAX_N:
        raise SizeCapError(f"reduce_to_basic_basis capped at n <= {REDUCE_BASIC_MAX_N}, got {q.n}")
    _require_hypergraphic(q, "reduce_to_basic_basis")
    classes, fam, preceded_by, order, basic_images = _class_order_data(q.n)
    support = q.support_bits()
    zeta = [Fraction(0)] * len(classes)
    for i in order:
        indicator = Fraction(1) if support & ~fam[i] == 0 else Fraction(0)
        zeta[i] = indicator - sum(zeta[j] for j in preceded_by[i])
    recombined = SparseElement.zero(BasisTag.WQSYM_M, q.n)
    for i, z in enumerate(zeta):
        if z:
            recombined = recombined + basic_images[i].scale(z)
    if recombined != upsilon_hgp(q):
        raise ChromkitError("triangular solve failed to reproduce the chromatic image")
    return {classes[i]: zeta[i] for i in range(len(classes)) if zeta[i] != 0}
