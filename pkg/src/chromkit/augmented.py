"""The augmented chromatic invariant in the quotient ring R.

R is the ring of power series in paired variables (x_i; q_i) modulo
q_i (q_i - 1)^2 = 0, so each q_i-polynomial reduces to degree two via
q^3 = 2 q^2 - q.  Values are canonicalized as rational-weighted multisets
of decorated profiles: one profile per set partition of the vertex set,
decorating each block with its size and the reduced power counting the
edges inside.  All specializations used downstream (value at zero, value
at one, derivative at one) are invariants of that reduction.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .algebra import BasisTag, SparseElement, shape_multiplicity_factor
from .combinatorics import count_parts_equal, enumerate_set_partitions
from .errors import DomainError, SizeCapError, ValidationError
from .graphs import Graph, psi_g, psi_power_sum

AUGMENTED_MAX_N = 8


class QClassPoly:
    """c0 + c1*q + c2*q^2 in the per-variable quotient by q(q-1)^2."""

    __slots__ = ("c0", "c1", "c2", "_hash")

    def __init__(self, c0=0, c1=0, c2=0):
        self.c0 = Fraction(c0)
        self.c1 = Fraction(c1)
        self.c2 = Fraction(c2)
        self._hash = hash((self.c0, self.c1, self.c2))

    @classmethod
    def from_power(cls, m: int) -> "QClassPoly":
        """q^m reduced by q^3 = 2 q^2 - q."""
        if m < 0:
            raise DomainError("negative powers are not in the ring")
        c = (Fraction(1), Fraction(0), Fraction(0))
        for _ in range(m):
            c0, c1, c2 = c
            c = (Fraction(0), c0 - c2, c1 + 2 * c2)
        return cls(*c)

    def value_at_0(self) -> Fraction:
        return self.c0

    def value_at_1(self) -> Fraction:
        return self.c0 + self.c1 + self.c2

    def derivative_at_1(self) -> Fraction:
        return self.c1 + 2 * self.c2

    def key(self):
        return (self.c0, self.c1, self.c2)

    def __eq__(self, other):
        return isinstance(other, QClassPoly) and self.key() == other.key()

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"QClassPoly({self.c0}, {self.c1}, {self.c2})"


_MONOMIAL_TRIPLES = {
    0: (Fraction(1), Fraction(0), Fraction(0)),
    1: (Fraction(0), Fraction(1), Fraction(0)),
    2: (Fraction(0), Fraction(0), Fraction(1)),
}


def expand_decorated_parts(parts, coeff=Fraction(1)):
    """Multilinear expansion of polynomial-decorated parts over {1, q, q^2}.

    Returns a map from canonical profiles (sorted tuples of (size, exponent))
    to rational weights.  Linearity of the ring lives here: profiles keyed by
    arbitrary reduced polynomials would not add correctly.
    """
    branches = [((), Fraction(coeff))]
    for size, poly in parts:
        weights = [(e, w) for e, w in enumerate((poly.c0, poly.c1, poly.c2)) if w]
        branches = [
            (prefix + ((size, e),), c * w)
            for prefix, c in branches
            for e, w in weights
        ]
    out: dict = {}
    for prefix, c in branches:
        key = tuple(sorted(prefix))
        out[key] = out.get(key, Fraction(0)) + c
    return out


class RElement:
    """A canonical-form value of the augmented invariant.

    terms maps a profile (sorted tuple of (block size, q-exponent in
    {0, 1, 2})) to a rational weight; polynomial decorations are expanded
    multilinearly by the constructors.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict = {}
        for profile, coeff in (terms or {}).items():
            for size, e in profile:
                if e not in (0, 1, 2) or size < 1:
                    raise ValidationError(f"bad profile entry ({size}, {e})")
            profile = tuple(sorted(profile))
            c = Fraction(coeff)
            if c:
                clean[profile] = clean.get(profile, Fraction(0)) + c
        self.terms = {p: c for p, c in clean.items() if c != 0}

    @classmethod
    def from_decorated_profiles(cls, decorated) -> "RElement":
        """Build from (parts, coeff) pairs with QClassPoly decorations."""
        acc: dict = {}
        for parts, coeff in decorated:
            for key, c in expand_decorated_parts(parts, coeff).items():
                acc[key] = acc.get(key, Fraction(0)) + c
        return cls(acc)

    @classmethod
    def zero(cls) -> "RElement":
        return cls({})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        acc = dict(self.terms)
        for p, c in other.terms.items():
            acc[p] = acc.get(p, Fraction(0)) + c
        return RElement(acc)

    def __sub__(self, other):
        acc = dict(self.terms)
        for p, c in other.terms.items():
            acc[p] = acc.get(p, Fraction(0)) - c
        return RElement(acc)

    def scale(self, c) -> "RElement":
        c = Fraction(c)
        return RElement({p: v * c for p, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, RElement) and self.terms == other.terms

    def __repr__(self):
        return f"RElement({self.terms!r})"

    def to_json_obj(self):
        out = []
        for profile, coeff in sorted(self.terms.items()):
            out.append(
                {
                    "profile": [
                        [size, [str(c) for c in _MONOMIAL_TRIPLES[e]]]
                        for size, e in profile
                    ],
                    "coeff": str(coeff),
                }
            )
        return out

    @classmethod
    def from_json_obj(cls, obj):
        decorated = []
        for entry in obj:
            parts = [
                (size, QClassPoly(*[Fraction(c) for c in poly]))
                for size, poly in entry["profile"]
            ]
            decorated.append((parts, Fraction(entry["coeff"])))
        return cls.from_decorated_profiles(decorated)


def _edges_inside(G: Graph, block) -> int:
    s = set(block)
    return sum(1 for u, v in G.edges if u in s and v in s)


@lru_cache(maxsize=100_000)
def augmented_psi(G: Graph) -> RElement:
    """Canonical form of the augmented invariant: one profile per set partition.

    A block of size s with m internal edges is decorated by (s, q^m reduced);
    summing each profile over injective color assignments recovers the series
    over all colorings.
    """
    if G.n > AUGMENTED_MAX_N:
        raise SizeCapError(f"augmented_psi capped at n <= {AUGMENTED_MAX_N}, got {G.n}")
    decorated = []
    for pi in enumerate_set_partitions(G.n):
        parts = [
            (len(b), QClassPoly.from_power(_edges_inside(G, b))) for b in pi.blocks
        ]
        decorated.append((parts, Fraction(1)))
    return RElement.from_decorated_profiles(decorated)


def specialize_k(x: RElement, k: int) -> SparseElement:
    """Derivative-at-one on k colors, squared-x extraction, zero elsewhere.

    For each profile, ordered injective selections of k parts stand for the
    colors 1..k: a selected part contributes its derivative at one and must
    have size two (the factor 2 from the squared variable cancels against
    the 1/2^k normalization); every remaining part contributes its value at
    zero, and the surviving sizes assemble a monomial symmetric function.
    """
    if k < 0:
        raise DomainError("specialize_k needs k >= 0")
    acc: dict = {}
    degree = None
    for profile, coeff in x.terms.items():
        parts = list(profile)
        total = sum(size for size, _ in parts)
        if degree is None:
            degree = total - 2 * k
        if total - 2 * k != degree:
            raise DomainError("profiles of mixed total size")
        for chosen in itertools.permutations(range(len(parts)), k):
            factor = coeff
            for i in chosen:
                size, e = parts[i]
                # derivative of q^e at one is e; sizes other than two vanish
                # under the squared-variable extraction
                if size != 2 or e == 0:
                    factor = Fraction(0)
                    break
                factor *= e
            if not factor:
                continue
            rest = [parts[i] for i in range(len(parts)) if i not in chosen]
            if any(e != 0 for _, e in rest):
                continue
            lam = tuple(sorted((size for size, _ in rest), reverse=True))
            acc[lam] = acc.get(lam, Fraction(0)) + factor * shape_multiplicity_factor(lam)
    if degree is None or degree < 0:
        return SparseElement.zero(BasisTag.SYM_M, max(degree or 0, 0))
    return SparseElement(BasisTag.SYM_M, degree, acc)


class OrderedMatching:
    """A tuple of pairwise vertex-disjoint edges."""

    __slots__ = ("edges",)

    def __init__(self, edges):
        edges = tuple(tuple(sorted(e)) for e in edges)
        seen = set()
        for u, v in edges:
            if u == v:
                raise ValidationError(f"loop at {u} in matching")
            if u in seen or v in seen:
                raise ValidationError("edges of a matching must be vertex-disjoint")
            seen.add(u)
            seen.add(v)
        self.edges = edges

    def vertices(self) -> set[int]:
        return {v for e in self.edges for v in e}

    def __len__(self):
        return len(self.edges)

    def __eq__(self, other):
        return isinstance(other, OrderedMatching) and self.edges == other.edges

    def __hash__(self):
        return hash(self.edges)

    def __repr__(self):
        return f"OrderedMatching({self.edges!r})"


def ordered_matchings(G: Graph, k: int):
    """All k-tuples of pairwise disjoint edges of G, in edge-tuple order."""
    if k < 0:
        raise DomainError("ordered_matchings needs k >= 0")
    for combo in itertools.combinations(G.edges, k):
        seen = set()
        ok = True
        for u, v in combo:
            if u in seen or v in seen:
                ok = False
                break
            seen.add(u)
            seen.add(v)
        if not ok:
            continue
        for perm in itertools.permutations(combo):
            yield OrderedMatching(perm)


def matching_side(G: Graph, k: int) -> SparseElement:
    """Sum of chromatic symmetric functions over vertex-deleted remainders.

    Enumerates ordered matchings of size k and removes both endpoints of
    every matched edge before evaluating.
    """
    if G.n > AUGMENTED_MAX_N:
        raise SizeCapError(f"matching_side capped at n <= {AUGMENTED_MAX_N}, got {G.n}")
    degree = max(G.n - 2 * k, 0)
    out = SparseElement.zero(BasisTag.SYM_M, degree)
    keep_all = set(range(1, G.n + 1))
    for m in ordered_matchings(G, k):
        rest = sorted(keep_all - m.vertices())
        out = out + psi_g(G.induced_subgraph(rest))
    return out


def power_sum_matching_side(G: Graph, k: int) -> SparseElement:
    """The same sum computed purely from power-sum coefficients.

    If c are the coefficients of the edge-subset expansion, the coefficient
    of p_lambda is (-1)^k * c(lambda with k extra 2-parts) * binom(m2 + k, k) * k!
    where m2 counts the 2-parts of lambda.
    """
    c = psi_power_sum(G)
    degree = max(G.n - 2 * k, 0)
    acc: dict = {}
    for mu, coeff in c.terms.items():
        if count_parts_equal(mu, 2) < k:
            continue
        lam = list(mu)
        for _ in range(k):
            lam.remove(2)
        lam = tuple(lam)
        m2 = count_parts_equal(lam, 2)
        weight = Fraction((-1) ** k) * coeff * comb(m2 + k, k) * factorial(k)
        acc[lam] = acc.get(lam, Fraction(0)) + weight
    return SparseElement(BasisTag.SYM_P, degree, acc)
