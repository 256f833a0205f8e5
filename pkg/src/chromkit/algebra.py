"""Exact sparse linear combinations over the monomial-type bases.

One value type covers all five graded rings that appear here: Sym in its
monomial and power-sum bases (keys: integer partitions), QSym monomial
(integer compositions), WSym monomial (set partitions) and WQSym monomial
(set compositions).  Coefficients are exact rationals throughout; a degree
``n`` travels with every element and cross-degree arithmetic is an error.
"""

from __future__ import annotations

import itertools
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .combinatorics import (
    SetComposition,
    SetPartition,
    is_integer_composition,
    is_integer_partition,
)
from .errors import DomainError, SizeCapError, ValidationError

SYM_PRODUCT_MAX_DEGREE = 12


class BasisTag(Enum):
    SYM_M = "SymMonomial"
    SYM_P = "SymPowerSum"
    QSYM_M = "QSymMonomial"
    WSYM_M = "WSymMonomial"
    WQSYM_M = "WQSymMonomial"


def _key_degree(basis: BasisTag, key) -> int:
    if basis in (BasisTag.SYM_M, BasisTag.SYM_P):
        if not (isinstance(key, tuple) and is_integer_partition(key)):
            raise ValidationError(f"{basis.value} key must be an integer partition, got {key!r}")
        return sum(key)
    if basis is BasisTag.QSYM_M:
        if not (isinstance(key, tuple) and is_integer_composition(key)):
            raise ValidationError(f"{basis.value} key must be an integer composition, got {key!r}")
        return sum(key)
    if basis is BasisTag.WSYM_M:
        if not isinstance(key, SetPartition):
            raise ValidationError(f"{basis.value} key must be a SetPartition, got {key!r}")
        return key.n
    if basis is BasisTag.WQSYM_M:
        if not isinstance(key, SetComposition):
            raise ValidationError(f"{basis.value} key must be a SetComposition, got {key!r}")
        return key.n
    raise ValidationError(f"unknown basis {basis!r}")


def _key_sort_key(basis: BasisTag, key):
    if basis in (BasisTag.WSYM_M, BasisTag.WQSYM_M):
        return key.blocks
    return key


def _key_to_json(basis: BasisTag, key):
    if basis in (BasisTag.WSYM_M, BasisTag.WQSYM_M):
        return key.to_json_obj()
    return list(key)


def _key_from_json(basis: BasisTag, obj):
    if basis is BasisTag.WSYM_M:
        return SetPartition.from_json_obj(obj)
    if basis is BasisTag.WQSYM_M:
        return SetComposition.from_json_obj(obj)
    return tuple(obj)


class SparseElement:
    """A rational linear combination of basis keys, zero terms omitted."""

    __slots__ = ("basis", "n", "terms")

    def __init__(self, basis: BasisTag, n: int, terms=None):
        self.basis = basis
        self.n = n
        clean: dict = {}
        for key, coeff in (terms or {}).items():
            c = Fraction(coeff)
            if c == 0:
                continue
            if _key_degree(basis, key) != n:
                raise DomainError(f"key {key!r} has degree != {n}")
            clean[key] = clean.get(key, Fraction(0)) + c
        self.terms = {k: v for k, v in clean.items() if v != 0}

    @classmethod
    def zero(cls, basis: BasisTag, n: int) -> "SparseElement":
        return cls(basis, n, {})

    @classmethod
    def monomial(cls, basis: BasisTag, key, coeff=1) -> "SparseElement":
        return cls(basis, _key_degree(basis, key), {key: Fraction(coeff)})

    @classmethod
    def from_terms(cls, basis: BasisTag, n: int, pairs) -> "SparseElement":
        acc: dict = {}
        for key, coeff in pairs:
            acc[key] = acc.get(key, Fraction(0)) + Fraction(coeff)
        return cls(basis, n, acc)

    def is_zero(self) -> bool:
        return not self.terms

    def items_sorted(self):
        return sorted(self.terms.items(), key=lambda kv: _key_sort_key(self.basis, kv[0]))

    def coefficient(self, key) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def _compatible(self, other):
        if not isinstance(other, SparseElement):
            raise DomainError("expected a SparseElement")
        if self.basis is not other.basis:
            raise DomainError(f"mixed bases {self.basis.value} and {other.basis.value}")
        if self.n != other.n:
            raise DomainError(f"mixed degrees {self.n} and {other.n}")

    def __add__(self, other):
        self._compatible(other)
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc.get(k, Fraction(0)) + v
        return SparseElement(self.basis, self.n, acc)

    def __sub__(self, other):
        self._compatible(other)
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc.get(k, Fraction(0)) - v
        return SparseElement(self.basis, self.n, acc)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "SparseElement":
        c = Fraction(c)
        return SparseElement(self.basis, self.n, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, SparseElement)
            and self.basis is other.basis
            and self.n == other.n
            and self.terms == other.terms
        )

    def __repr__(self):
        body = " + ".join(f"{v}*[{k}]" for k, v in self.items_sorted())
        return f"<{self.basis.value} deg {self.n}: {body or '0'}>"

    def to_json_obj(self):
        return {
            "basis": self.basis.value,
            "n": self.n,
            "terms": [
                {"key": _key_to_json(self.basis, k), "coeff": str(v)}
                for k, v in self.items_sorted()
            ],
        }

    @classmethod
    def from_json_obj(cls, obj):
        basis = BasisTag(obj["basis"])
        pairs = [
            (_key_from_json(basis, t["key"]), Fraction(t["coeff"]))
            for t in obj["terms"]
        ]
        return cls.from_terms(basis, obj["n"], pairs)


# ---------------------------------------------------------------------------
# Structure maps.
# ---------------------------------------------------------------------------

_COMU_TARGET = {BasisTag.WSYM_M: BasisTag.SYM_M, BasisTag.WQSYM_M: BasisTag.QSYM_M}


def shape_multiplicity_factor(shape) -> int:
    """Product of factorials of part multiplicities.

    Letting non-commuting variables commute sends a set-partition monomial
    to this multiple of the partition monomial: blocks of equal size become
    interchangeable color slots.  Ordered blocks (the QSym side) pin the
    color order, so no factor arises there.
    """
    out = 1
    run = 1
    for i in range(1, len(shape)):
        if shape[i] == shape[i - 1]:
            run += 1
            out *= run
        else:
            run = 1
    return out


def comu(x: SparseElement) -> SparseElement:
    """Let the variables commute, landing in Sym or QSym monomials."""
    target = _COMU_TARGET.get(x.basis)
    if target is None:
        raise DomainError(f"comu expects a WSym or WQSym element, got {x.basis.value}")
    pairs = []
    for key, coeff in x.terms.items():
        if x.basis is BasisTag.WSYM_M:
            shape = key.shape()
            pairs.append((shape, coeff * shape_multiplicity_factor(shape)))
        else:
            pairs.append((key.composition_type(), coeff))
    return SparseElement.from_terms(target, x.n, pairs)


def embed_wsym_in_wqsym(x: SparseElement) -> SparseElement:
    """Send each set-partition monomial to the sum over its block orderings."""
    if x.basis is not BasisTag.WSYM_M:
        raise DomainError(f"embed_wsym_in_wqsym expects a WSym element, got {x.basis.value}")
    pairs = []
    for key, coeff in x.terms.items():
        for perm in itertools.permutations(key.blocks):
            pairs.append((SetComposition._unchecked(x.n, perm), coeff))
    return SparseElement.from_terms(BasisTag.WQSYM_M, x.n, pairs)


# ---------------------------------------------------------------------------
# Exact rank.
# ---------------------------------------------------------------------------

def _reduce_row(row, pivots):
    """Fraction-free reduction of an integer row against echelon pivot rows."""
    for col, prow in pivots:
        a = row[col]
        if a:
            lead = prow[col]
            row = [lead * x - a * y for x, y in zip(row, prow)]
    g = 0
    for x in row:
        g = gcd(g, x)
        if g == 1:
            break
    if g > 1:
        row = [x // g for x in row]
    return row


def rank_rows(rows) -> int:
    """Exact rank over the rationals of integer rows, incremental echelon."""
    pivots: list[tuple[int, list[int]]] = []
    seen = set()
    for row in rows:
        t = tuple(row)
        if t in seen:
            continue
        seen.add(t)
        reduced = _reduce_row(list(row), pivots)
        col = next((i for i, x in enumerate(reduced) if x), None)
        if col is None:
            continue
        pivots.append((col, reduced))
        pivots.sort(key=lambda p: p[0])
    return len(pivots)


def rank(xs) -> int:
    """Rank of a family of SparseElements over one basis and degree."""
    xs = list(xs)
    if not xs:
        return 0
    basis, n = xs[0].basis, xs[0].n
    for x in xs:
        if x.basis is not basis or x.n != n:
            raise DomainError("rank: mixed bases or degrees")
    keys = sorted({k for x in xs for k in x.terms}, key=lambda k: _key_sort_key(basis, k))
    index = {k: i for i, k in enumerate(keys)}
    rows = []
    for x in xs:
        denom = 1
        for v in x.terms.values():
            denom = denom * v.denominator // gcd(denom, v.denominator)
        row = [0] * len(keys)
        for k, v in x.terms.items():
            row[index[k]] = int(v * denom)
        rows.append(row)
    return rank_rows(rows)


# ---------------------------------------------------------------------------
# Symmetric-function products via finite-variable expansion.
# ---------------------------------------------------------------------------

def _distinct_permutations(items):
    """Distinct permutations of a multiset, lexicographically."""
    values = sorted(set(items))
    counts = {v: 0 for v in values}
    for it in items:
        counts[it] += 1
    n = len(items)
    out = [None] * n

    def rec(i):
        if i == n:
            yield tuple(out)
            return
        for v in values:
            if counts[v]:
                counts[v] -= 1
                out[i] = v
                yield from rec(i + 1)
                counts[v] += 1

    yield from rec(0)


@lru_cache(maxsize=None)
def _monomial_expansion(lam: tuple, d: int):
    """m_lam as a polynomial in d variables: exponent tuple -> 1."""
    if len(lam) > d:
        return {}
    exps = tuple(sorted(lam + (0,) * (d - len(lam)), reverse=True))
    return {p: 1 for p in _distinct_permutations(exps)}


def _element_polynomial(x: SparseElement, d: int):
    poly: dict = {}
    for lam, coeff in x.terms.items():
        for mono, c in _monomial_expansion(lam, d).items():
            poly[mono] = poly.get(mono, Fraction(0)) + coeff * c
    return poly


def _poly_to_monomial_element(poly, d: int, degree: int) -> SparseElement:
    pairs = []
    for mono, coeff in poly.items():
        canonical = tuple(sorted(mono, reverse=True))
        if mono == canonical:
            lam = tuple(p for p in canonical if p)
            pairs.append((lam, coeff))
    return SparseElement.from_terms(BasisTag.SYM_M, degree, pairs)


def multiply_sym_monomial(a: SparseElement, b: SparseElement) -> SparseElement:
    """Product in Sym, computed in exactly deg(a) + deg(b) variables."""
    if a.basis is not BasisTag.SYM_M or b.basis is not BasisTag.SYM_M:
        raise DomainError("multiply_sym_monomial expects Sym monomial elements")
    d = a.n + b.n
    if d > SYM_PRODUCT_MAX_DEGREE:
        raise SizeCapError(f"symmetric product capped at degree {SYM_PRODUCT_MAX_DEGREE}, got {d}")
    pa = _element_polynomial(a, d)
    pb = _element_polynomial(b, d)
    prod: dict = {}
    for ma, ca in pa.items():
        for mb, cb in pb.items():
            key = tuple(x + y for x, y in zip(ma, mb))
            prod[key] = prod.get(key, Fraction(0)) + ca * cb
    return _poly_to_monomial_element(prod, d, d)


def power_sum_to_monomial(x: SparseElement) -> SparseElement:
    """Expand a power-sum element into the monomial basis."""
    if x.basis is not BasisTag.SYM_P:
        raise DomainError("power_sum_to_monomial expects a Sym power-sum element")
    if x.n > SYM_PRODUCT_MAX_DEGREE:
        raise SizeCapError(f"power-sum expansion capped at degree {SYM_PRODUCT_MAX_DEGREE}, got {x.n}")
    result = SparseElement.zero(BasisTag.SYM_M, x.n)
    for lam, coeff in sorted(x.terms.items()):
        result = result + _power_product_monomial(lam, x.n).scale(coeff)
    return result


@lru_cache(maxsize=None)
def _power_product_monomial(lam: tuple, degree: int) -> SparseElement:
    """p_lam in the monomial basis, by polynomial expansion in deg variables."""
    d = degree
    poly = {(0,) * d: Fraction(1)}
    for part in lam:
        nxt: dict = {}
        for mono, c in poly.items():
            for i in range(d):
                key = mono[:i] + (mono[i] + part,) + mono[i + 1 :]
                nxt[key] = nxt.get(key, Fraction(0)) + c
        poly = nxt
    return _poly_to_monomial_element(poly, d, degree)
