"""Labeled graphs, their chromatic maps, and constructive kernel certificates.

The chromatic map into word symmetric functions is computed through proper
set partitions; its commutative image lands in Sym.  Any graph that is not a
complement of disjoint cliques admits a triangle rewrite that strictly
increases the edge count, so iterating it expresses every input combination
as tagged relation terms plus a residual over the clique-complement family.
The certificate re-expands its own identity on construction.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .algebra import BasisTag, SparseElement, comu
from .combinatorics import SetPartition, enumerate_set_partitions
from .errors import DomainError, SizeCapError, ValidationError
from .polytopes import HypergraphicPolytope

CHROMATIC_MAX_N = 9
REDUCTION_MAX_N = 7
POWER_SUM_MAX_EDGES = 20


def _normalize_edge(e):
    u, v = e
    if u == v:
        raise ValidationError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class Graph:
    """A simple graph on vertex set [n], edges stored sorted."""

    __slots__ = ("n", "edges", "_hash")

    def __init__(self, n: int, edges=()):
        seen = set()
        for e in edges:
            e = _normalize_edge(e)
            if not (1 <= e[0] and e[1] <= n):
                raise ValidationError(f"edge {e} outside [{n}]")
            if e in seen:
                raise ValidationError(f"repeated edge {e}")
            seen.add(e)
        self.n = n
        self.edges = tuple(sorted(seen))
        self._hash = hash((n, self.edges))

    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def with_edges(self, extra) -> "Graph":
        return Graph(self.n, self.edges + tuple(_normalize_edge(e) for e in extra))

    def degree_sequence(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u - 1] += 1
            deg[v - 1] += 1
        return tuple(sorted(deg, reverse=True))

    def adjacency(self) -> dict[int, set[int]]:
        adj = {v: set() for v in range(1, self.n + 1)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def complement(self) -> "Graph":
        present = set(self.edges)
        edges = [
            (u, v)
            for u, v in itertools.combinations(range(1, self.n + 1), 2)
            if (u, v) not in present
        ]
        return Graph(self.n, edges)

    def induced_subgraph(self, keep) -> "Graph":
        """Subgraph on the kept vertices, relabeled order-preserving to [k]."""
        keep = sorted(set(keep))
        relabel = {v: i + 1 for i, v in enumerate(keep)}
        kept = set(keep)
        edges = [
            (relabel[u], relabel[v]) for u, v in self.edges if u in kept and v in kept
        ]
        return Graph(len(keep), edges)

    def relabel(self, mapping) -> "Graph":
        return Graph(self.n, [(mapping[u], mapping[v]) for u, v in self.edges])

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __lt__(self, other):
        return (self.n, len(self.edges), self.edges) < (other.n, len(other.edges), other.edges)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Graph({self.n}, {self.edges!r})"

    def to_json_obj(self):
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json_obj(cls, obj):
        return cls(obj["n"], [tuple(e) for e in obj["edges"]])


def enumerate_graphs(n: int):
    """All graphs on [n], by increasing edge bitmask."""
    if not (0 <= n <= CHROMATIC_MAX_N):
        raise SizeCapError(f"graph enumeration capped at n <= {CHROMATIC_MAX_N}, got {n}")
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


# ---------------------------------------------------------------------------
# Chromatic maps.
# ---------------------------------------------------------------------------

@lru_cache(maxsize=16)
def _pair_positions(n: int) -> dict:
    return {p: i for i, p in enumerate(itertools.combinations(range(1, n + 1), 2))}


def _edge_mask(g: Graph) -> int:
    pos = _pair_positions(g.n)
    m = 0
    for e in g.edges:
        m |= 1 << pos[e]
    return m


@lru_cache(maxsize=16)
def _partition_inside_masks(n: int):
    """Each set partition of [n] with the bitmask of vertex pairs inside blocks."""
    pos = _pair_positions(n)
    out = []
    for pi in enumerate_set_partitions(n):
        m = 0
        for b in pi.blocks:
            for pair in itertools.combinations(b, 2):
                m |= 1 << pos[pair]
        out.append((pi, m))
    return tuple(out)


@lru_cache(maxsize=50_000)
def upsilon_g(G: Graph) -> SparseElement:
    """Chromatic map into WSym: the sum over proper set partitions of V(G).

    A set partition is proper when no block contains an edge.
    """
    if G.n > CHROMATIC_MAX_N:
        raise SizeCapError(f"upsilon_g capped at n <= {CHROMATIC_MAX_N}, got {G.n}")
    gm = _edge_mask(G)
    terms = {pi: 1 for pi, inside in _partition_inside_masks(G.n) if inside & gm == 0}
    return SparseElement(BasisTag.WSYM_M, G.n, terms)


def psi_g(G: Graph) -> SparseElement:
    """Chromatic symmetric function in the Sym monomial basis."""
    return comu(upsilon_g(G))


def clique_complement(pi: SetPartition) -> Graph:
    """The graph whose edges join vertices lying in distinct blocks of pi."""
    index = pi.block_index()
    edges = [
        (u, v)
        for u, v in itertools.combinations(range(1, pi.n + 1), 2)
        if index[u] != index[v]
    ]
    return Graph(pi.n, edges)


def complement_component_partition(G: Graph) -> SetPartition:
    """Connected components of the complement graph, as a set partition."""
    adj = G.complement().adjacency()
    unvisited = set(range(1, G.n + 1))
    blocks = []
    while unvisited:
        start = min(unvisited)
        stack = [start]
        comp = {start}
        unvisited.discard(start)
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w in unvisited:
                    unvisited.discard(w)
                    comp.add(w)
                    stack.append(w)
        blocks.append(tuple(sorted(comp)))
    return SetPartition(G.n, blocks)


def as_clique_complement(G: Graph):
    """The set partition pi with G = K_pi^c, or None."""
    tau = complement_component_partition(G)
    return tau if clique_complement(tau) == G else None


def find_reduction_triangle(G: Graph):
    """A triangle (e1, e2, e3) with e3 in G and e1, e2 absent, or None.

    Picks the lexicographically least pair (u, w) at distance two in the
    complement and their least common complement-neighbor v; returns
    ({u,v}, {w,v}, {u,w}).  None exactly when the complement is a disjoint
    union of cliques.
    """
    adjc = G.complement().adjacency()
    for u in range(1, G.n + 1):
        for w in range(u + 1, G.n + 1):
            if w in adjc[u]:
                continue
            common = adjc[u] & adjc[w]
            if common:
                v = min(common)
                return (
                    _normalize_edge((u, v)),
                    _normalize_edge((w, v)),
                    (u, w),
                )
    return None


# ---------------------------------------------------------------------------
# Relations and certificates.
# ---------------------------------------------------------------------------

class ModularRelationG:
    """The four-term relation G - (G + e1) - (G + e2) + (G + e1 + e2)."""

    __slots__ = ("base", "e1", "e2", "e3")

    def __init__(self, base: Graph, e1, e2, e3):
        e1, e2, e3 = (_normalize_edge(e) for e in (e1, e2, e3))
        vertices = set(e1) | set(e2) | set(e3)
        if len(vertices) != 3 or len({e1, e2, e3}) != 3:
            raise ValidationError(f"edges {e1}, {e2}, {e3} do not form a triangle")
        present = set(base.edges)
        if e3 not in present:
            raise ValidationError(f"e3 = {e3} must belong to the base graph")
        if e1 in present or e2 in present:
            raise ValidationError("e1 and e2 must be absent from the base graph")
        self.base = base
        self.e1, self.e2, self.e3 = e1, e2, e3

    def expansion(self) -> dict[Graph, Fraction]:
        one = Fraction(1)
        return {
            self.base: one,
            self.base.with_edges([self.e1]): -one,
            self.base.with_edges([self.e2]): -one,
            self.base.with_edges([self.e1, self.e2]): one,
        }

    def __repr__(self):
        return f"ModularRelationG({self.base!r}, {self.e1}, {self.e2}, {self.e3})"

    def __eq__(self, other):
        return (
            isinstance(other, ModularRelationG)
            and (self.base, self.e1, self.e2, self.e3)
            == (other.base, other.e1, other.e2, other.e3)
        )

    def __hash__(self):
        return hash((self.base, self.e1, self.e2, self.e3))

    def to_json_obj(self):
        return {
            "base": self.base.to_json_obj(),
            "e1": list(self.e1),
            "e2": list(self.e2),
            "e3": list(self.e3),
            "expansion": _combination_to_json(self.expansion()),
        }

    @classmethod
    def from_json_obj(cls, obj):
        rel = cls(
            Graph.from_json_obj(obj["base"]),
            tuple(obj["e1"]),
            tuple(obj["e2"]),
            tuple(obj["e3"]),
        )
        if combination_from_json(obj["expansion"]) != rel.expansion():
            raise ValidationError("serialized expansion does not match the relation")
        return rel


def all_modular_relations(G: Graph):
    """Every valid triangle choice on G, in vertex-triple order."""
    present = set(G.edges)
    out = []
    for a, b, c in itertools.combinations(range(1, G.n + 1), 3):
        triple = [(a, b), (a, c), (b, c)]
        inside = [e for e in triple if e in present]
        if len(inside) == 1:
            e3 = inside[0]
            e1, e2 = (e for e in triple if e != e3)
            out.append(ModularRelationG(G, e1, e2, e3))
    return out


def _add_combination(acc, combo, scale=Fraction(1)):
    for g, c in combo.items():
        acc[g] = acc.get(g, Fraction(0)) + scale * c


def _clean_combination(combo):
    return {g: c for g, c in combo.items() if c != 0}


def _combination_to_json(combo):
    items = sorted(combo.items(), key=lambda gc: gc[0])
    return [{"coeff": str(c), "graph": g.to_json_obj()} for g, c in items]


def combination_from_json(obj):
    combo: dict[Graph, Fraction] = {}
    for entry in obj:
        g = Graph.from_json_obj(entry["graph"])
        combo[g] = combo.get(g, Fraction(0)) + Fraction(entry["coeff"])
    return _clean_combination(combo)


class KernelCertificateG:
    """A decomposition of a graph combination into tagged relations.

    input = sum of modular four-term expansions + sum of isomorphism
    differences + residual, with every residual graph a clique complement.
    The identity is re-expanded and checked exactly on construction.
    """

    __slots__ = ("n", "input_combination", "modular_terms", "iso_terms", "residual")

    def __init__(self, n, input_combination, modular_terms, iso_terms, residual):
        self.n = n
        self.input_combination = _clean_combination(dict(input_combination))
        self.modular_terms = tuple(modular_terms)
        self.iso_terms = tuple(iso_terms)
        self.residual = _clean_combination(dict(residual))
        for g in self.residual:
            if as_clique_complement(g) is None:
                raise ValidationError(f"residual graph {g} is not a clique complement")
        recombined: dict[Graph, Fraction] = {}
        for coeff, rel in self.modular_terms:
            _add_combination(recombined, rel.expansion(), coeff)
        for coeff, g1, g2 in self.iso_terms:
            _add_combination(recombined, {g1: Fraction(1), g2: Fraction(-1)}, coeff)
        _add_combination(recombined, self.residual)
        if _clean_combination(recombined) != self.input_combination:
            raise ValidationError("certificate identity does not re-expand to the input")

    def residual_is_zero(self) -> bool:
        return not self.residual

    def to_json_obj(self):
        return {
            "n": self.n,
            "input": _combination_to_json(self.input_combination),
            "modular_terms": [
                {"coeff": str(c), "relation": rel.to_json_obj()}
                for c, rel in self.modular_terms
            ],
            "iso_terms": [
                {"coeff": str(c), "graph": g1.to_json_obj(), "canonical": g2.to_json_obj()}
                for c, g1, g2 in self.iso_terms
            ],
            "residual": _combination_to_json(self.residual),
        }

    @classmethod
    def from_json_obj(cls, obj):
        return cls(
            obj["n"],
            combination_from_json(obj["input"]),
            [
                (Fraction(t["coeff"]), ModularRelationG.from_json_obj(t["relation"]))
                for t in obj["modular_terms"]
            ],
            [
                (
                    Fraction(t["coeff"]),
                    Graph.from_json_obj(t["graph"]),
                    Graph.from_json_obj(t["canonical"]),
                )
                for t in obj["iso_terms"]
            ],
            combination_from_json(obj["residual"]),
        )

    def __eq__(self, other):
        return (
            isinstance(other, KernelCertificateG)
            and self.n == other.n
            and self.input_combination == other.input_combination
            and self.modular_terms == other.modular_terms
            and self.iso_terms == other.iso_terms
            and self.residual == other.residual
        )


@lru_cache(maxsize=100_000)
def canonical_iso_representative(G: Graph) -> Graph:
    """Minimum relabeling of G under the edge-tuple order."""
    best = None
    for perm in itertools.permutations(range(1, G.n + 1)):
        mapping = {v: perm[v - 1] for v in range(1, G.n + 1)}
        edges = tuple(sorted(_normalize_edge((mapping[u], mapping[v])) for u, v in G.edges))
        if best is None or edges < best:
            best = edges
    return Graph(G.n, best)


def reduce_to_clique_basis(x, mode: str = "noncommutative") -> KernelCertificateG:
    """Rewrite a graph combination over the clique-complement family.

    Every non-clique-complement graph is traded for three graphs with more
    edges through a triangle rewrite, so processing graphs by edge count
    terminates.  In commutative mode residual terms are further grouped into
    isomorphism classes against canonical representatives.
    """
    if mode not in ("noncommutative", "commutative"):
        raise DomainError(f"unknown reduction mode {mode!r}")
    if isinstance(x, Graph):
        x = {x: Fraction(1)}
    x = {g: Fraction(c) for g, c in x.items() if c != 0}
    if not x:
        raise DomainError("reduce_to_clique_basis: empty combination (supply a graph)")
    ns = {g.n for g in x}
    if len(ns) != 1:
        raise DomainError(f"mixed ground sets in combination: {sorted(ns)}")
    n = ns.pop()
    if n > REDUCTION_MAX_N:
        raise SizeCapError(f"reduction capped at n <= {REDUCTION_MAX_N}, got {n}")

    pending: dict[Graph, Fraction] = dict(x)
    modular_terms = []
    residual: dict[Graph, Fraction] = {}
    max_edges = n * (n - 1) // 2
    for m in range(max_edges + 1):
        layer = sorted(g for g in pending if len(g.edges) == m)
        for g in layer:
            coeff = pending.pop(g)
            if coeff == 0:
                continue
            tri = find_reduction_triangle(g)
            if tri is None:
                residual[g] = residual.get(g, Fraction(0)) + coeff
                continue
            e1, e2, e3 = tri
            modular_terms.append((coeff, ModularRelationG(g, e1, e2, e3)))
            for extra, sign in (((e1,), 1), ((e2,), 1), ((e1, e2), -1)):
                h = g.with_edges(extra)
                pending[h] = pending.get(h, Fraction(0)) + sign * coeff

    iso_terms = []
    if mode == "commutative":
        grouped: dict[Graph, Fraction] = {}
        for g in sorted(residual):
            coeff = residual[g]
            canon = canonical_iso_representative(g)
            if canon != g:
                iso_terms.append((coeff, g, canon))
            grouped[canon] = grouped.get(canon, Fraction(0)) + coeff
        residual = grouped

    return KernelCertificateG(n, x, modular_terms, iso_terms, _clean_combination(residual))


def are_isomorphic(G1: Graph, G2: Graph):
    """An edge-preserving bijection between the vertex sets, or None.

    Backtracking over vertices with degree-sequence pruning.
    """
    if G1.n > CHROMATIC_MAX_N or G2.n > CHROMATIC_MAX_N:
        raise SizeCapError(f"isomorphism search capped at n <= {CHROMATIC_MAX_N}")
    if G1.n != G2.n or len(G1.edges) != len(G2.edges):
        return None
    if G1.degree_sequence() != G2.degree_sequence():
        return None
    n = G1.n
    adj1 = G1.adjacency()
    adj2 = G2.adjacency()
    deg1 = {v: len(adj1[v]) for v in adj1}
    deg2 = {v: len(adj2[v]) for v in adj2}
    order = sorted(range(1, n + 1), key=lambda v: (-deg1[v], v))
    mapping: dict[int, int] = {}
    used = set()

    def extend(i):
        if i == n:
            return True
        v = order[i]
        for w in range(1, n + 1):
            if w in used or deg2[w] != deg1[v]:
                continue
            ok = True
            for u in mapping:
                if (u in adj1[v]) != (mapping[u] in adj2[w]):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used.add(w)
                if extend(i + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    return dict(mapping) if extend(0) else None


# ---------------------------------------------------------------------------
# Power-sum expansion and the zonotope embedding.
# ---------------------------------------------------------------------------

def _components_partition_shape(n, edges) -> tuple[int, ...]:
    parent = list(range(n + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    sizes: dict[int, int] = {}
    for v in range(1, n + 1):
        r = find(v)
        sizes[r] = sizes.get(r, 0) + 1
    return tuple(sorted(sizes.values(), reverse=True))


def psi_power_sum(G: Graph) -> SparseElement:
    """Edge-subset expansion of the chromatic invariant in the power-sum basis.

    Each edge subset contributes its component-size partition with sign
    (-1)^(subset size).
    """
    m = len(G.edges)
    if m > POWER_SUM_MAX_EDGES:
        raise SizeCapError(f"power-sum expansion capped at {POWER_SUM_MAX_EDGES} edges, got {m}")
    counts: dict[tuple, int] = {}
    for mask in range(1 << m):
        chosen = [G.edges[i] for i in range(m) if mask >> i & 1]
        lam = _components_partition_shape(G.n, chosen)
        sign = -1 if bin(mask).count("1") % 2 else 1
        counts[lam] = counts.get(lam, 0) + sign
    return SparseElement(BasisTag.SYM_P, G.n, counts)


def zonotope(G: Graph) -> HypergraphicPolytope:
    """Coefficient one on every edge pair, zero elsewhere."""
    return HypergraphicPolytope(G.n, {frozenset(e): Fraction(1) for e in G.edges})
