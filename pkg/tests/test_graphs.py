import itertools
import random
from fractions import Fraction

import pytest

from chromkit.algebra import BasisTag, SparseElement, rank, shape_multiplicity_factor
from chromkit.combinatorics import (
    SetPartition,
    bell_number,
    enumerate_set_partitions,
    partition_count,
)
from chromkit.errors import DomainError, SizeCapError, ValidationError
from chromkit.graphs import (
    Graph,
    KernelCertificateG,
    ModularRelationG,
    all_modular_relations,
    are_isomorphic,
    as_clique_complement,
    canonical_iso_representative,
    clique_complement,
    enumerate_graphs,
    find_reduction_triangle,
    psi_g,
    psi_power_sum,
    reduce_to_clique_basis,
    upsilon_g,
    zonotope,
)

K2 = Graph(2, [(1, 2)])
K3 = Graph(3, [(1, 2), (1, 3), (2, 3)])
P3 = Graph(3, [(1, 2), (2, 3)])
E2 = Graph(2)
E3 = Graph(3)


def wsym(n, *blockses):
    return SparseElement(
        BasisTag.WSYM_M, n, {SetPartition(n, blocks): 1 for blocks in blockses}
    )


def image_of_combination(combo, fn, zero):
    out = zero
    for g, c in combo.items():
        out = out + fn(g).scale(c)
    return out


class TestGraphType:
    def test_canonical_storage(self):
        g = Graph(3, [(3, 1), (2, 1)])
        assert g.edges == ((1, 2), (1, 3))

    def test_loops_and_duplicates_rejected(self):
        with pytest.raises(ValidationError):
            Graph(2, [(1, 1)])
        with pytest.raises(ValidationError):
            Graph(2, [(1, 2), (2, 1)])
        with pytest.raises(ValidationError):
            Graph(2, [(1, 3)])

    def test_json_round_trip(self):
        assert Graph.from_json_obj(P3.to_json_obj()) == P3

    def test_enumeration_count(self):
        assert sum(1 for _ in enumerate_graphs(3)) == 8
        assert sum(1 for _ in enumerate_graphs(0)) == 1


class TestChromaticMaps:
    def test_upsilon_K2(self):
        assert upsilon_g(K2) == wsym(2, ((1,), (2,)))

    def test_upsilon_empty2(self):
        assert upsilon_g(E2) == wsym(2, ((1,), (2,)), ((1, 2),))

    def test_upsilon_clique_complement_is_downset(self):
        pi = SetPartition(3, [(1, 2), (3,)])
        g = clique_complement(pi)
        assert g.edges == ((1, 3), (2, 3))
        assert upsilon_g(g) == wsym(3, ((1,), (2,), (3,)), ((1, 2), (3,)))

    def test_psi_values(self):
        assert psi_g(K2) == SparseElement(BasisTag.SYM_M, 2, {(1, 1): 2})
        assert psi_g(K3) == SparseElement(BasisTag.SYM_M, 3, {(1, 1, 1): 6})
        assert psi_g(E3) == SparseElement(
            BasisTag.SYM_M, 3, {(1, 1, 1): 6, (2, 1): 3, (3,): 1}
        )

    def test_psi_by_independent_shape_count(self):
        for n in range(5):
            for g in enumerate_graphs(n):
                expected = {}
                for pi in enumerate_set_partitions(n):
                    blocks = [set(b) for b in pi.blocks]
                    if all(
                        not any(u in b and v in b for b in blocks)
                        for u, v in g.edges
                    ):
                        lam = pi.shape()
                        expected[lam] = expected.get(
                            lam, 0
                        ) + shape_multiplicity_factor(lam)
                assert psi_g(g) == SparseElement(BasisTag.SYM_M, n, expected)

    def test_size_cap(self):
        with pytest.raises(SizeCapError):
            upsilon_g(Graph(10))


class TestCliqueComplements:
    def test_examples(self):
        assert clique_complement(SetPartition(2, [(1, 2)])) == E2
        assert clique_complement(SetPartition(2, [(1,), (2,)])) == K2

    def test_recognition(self):
        assert as_clique_complement(P3) == SetPartition(3, [(1, 3), (2,)])
        assert as_clique_complement(Graph(3, [(1, 2)])) is None
        for n in range(5):
            for pi in enumerate_set_partitions(n):
                assert as_clique_complement(clique_complement(pi)) == pi


class TestReductionTriangle:
    def test_none_iff_clique_complement(self):
        for n in range(6):
            for g in enumerate_graphs(n):
                assert (find_reduction_triangle(g) is None) == (
                    as_clique_complement(g) is not None
                )

    def test_p3_is_terminal(self):
        assert find_reduction_triangle(P3) is None

    def test_single_edge_on_three(self):
        g = Graph(3, [(1, 2)])
        assert find_reduction_triangle(g) == ((1, 3), (2, 3), (1, 2))

    def test_returned_triangle_is_valid(self):
        for g in enumerate_graphs(4):
            tri = find_reduction_triangle(g)
            if tri is None:
                continue
            e1, e2, e3 = tri
            ModularRelationG(g, e1, e2, e3)  # validates


class TestModularRelations:
    def test_validation(self):
        with pytest.raises(ValidationError):
            ModularRelationG(K3, (1, 2), (1, 3), (2, 3))  # e1 already present
        with pytest.raises(ValidationError):
            ModularRelationG(Graph(4, [(1, 2)]), (1, 3), (2, 4), (1, 2))

    def test_expansion_signs(self):
        g = Graph(3, [(1, 2)])
        rel = ModularRelationG(g, (1, 3), (2, 3), (1, 2))
        exp = rel.expansion()
        assert exp[g] == 1
        assert exp[g.with_edges([(1, 3)])] == -1
        assert exp[g.with_edges([(2, 3)])] == -1
        assert exp[g.with_edges([(1, 3), (2, 3)])] == 1

    def test_images_vanish_exhaustively(self):
        for n in range(5):
            for g in enumerate_graphs(n):
                for rel in all_modular_relations(g):
                    image = image_of_combination(
                        rel.expansion(), upsilon_g, SparseElement.zero(BasisTag.WSYM_M, n)
                    )
                    assert image.is_zero()


class TestReduction:
    def test_single_clique_complement_is_fixed(self):
        cert = reduce_to_clique_basis(K2)
        assert cert.residual == {K2: Fraction(1)}
        assert not cert.modular_terms

    def test_relation_input_reduces_to_zero(self):
        g = Graph(3, [(1, 2)])
        rel = ModularRelationG(g, (1, 3), (2, 3), (1, 2))
        cert = reduce_to_clique_basis(rel.expansion())
        assert cert.residual_is_zero()
        assert len(cert.modular_terms) == 1

    def test_terminates_on_all_graphs(self):
        for n in range(5):
            for g in enumerate_graphs(n):
                cert = reduce_to_clique_basis(g)
                assert all(as_clique_complement(h) is not None for h in cert.residual)

    def test_spanning_identity_under_upsilon(self):
        for g in enumerate_graphs(4):
            cert = reduce_to_clique_basis(g)
            recovered = image_of_combination(
                cert.residual, upsilon_g, SparseElement.zero(BasisTag.WSYM_M, 4)
            )
            assert recovered == upsilon_g(g)

    def test_commutative_mode_groups_residuals(self):
        g1 = Graph(3, [(1, 2)])
        g2 = Graph(3, [(1, 3)])
        combo = {g1: Fraction(1), g2: Fraction(-1)}
        cert = reduce_to_clique_basis(combo, mode="commutative")
        assert cert.residual_is_zero()
        assert psi_g(g1) == psi_g(g2)

    def test_kernel_agreement_random(self):
        rng = random.Random(5)
        for n in (3, 4):
            graphs = list(enumerate_graphs(n))
            for _ in range(150):
                combo = {}
                for _ in range(3):
                    g = rng.choice(graphs)
                    c = Fraction(rng.randint(-2, 2))
                    if c:
                        combo[g] = combo.get(g, Fraction(0)) + c
                combo = {g: c for g, c in combo.items() if c}
                if not combo:
                    continue
                cert = reduce_to_clique_basis(combo)
                image = image_of_combination(
                    combo, upsilon_g, SparseElement.zero(BasisTag.WSYM_M, n)
                )
                assert cert.residual_is_zero() == image.is_zero()
                cert_c = reduce_to_clique_basis(combo, mode="commutative")
                image_c = image_of_combination(
                    combo, psi_g, SparseElement.zero(BasisTag.SYM_M, n)
                )
                assert cert_c.residual_is_zero() == image_c.is_zero()

    def test_certificate_validation_catches_tampering(self):
        cert = reduce_to_clique_basis(Graph(3, [(1, 2)]))
        with pytest.raises(ValidationError):
            KernelCertificateG(
                cert.n,
                cert.input_combination,
                cert.modular_terms,
                cert.iso_terms,
                {},  # drop the residual: identity breaks
            )

    def test_mixed_ground_sets_rejected(self):
        with pytest.raises(DomainError):
            reduce_to_clique_basis({K2: Fraction(1), K3: Fraction(1)})

    def test_size_cap(self):
        with pytest.raises(SizeCapError):
            reduce_to_clique_basis(Graph(8, [(1, 2)]))


class TestIsomorphism:
    def test_relabeled_paths(self):
        g1 = Graph(3, [(1, 2), (2, 3)])
        g2 = Graph(3, [(1, 2), (1, 3)])
        phi = are_isomorphic(g1, g2)
        assert phi is not None
        mapped = {tuple(sorted((phi[u], phi[v]))) for u, v in g1.edges}
        assert mapped == set(g2.edges)

    def test_distinguishes(self):
        assert are_isomorphic(K3, P3) is None

    def test_against_exhaustive_search(self):
        rng = random.Random(9)
        graphs = list(enumerate_graphs(5))
        for _ in range(30):
            g1, g2 = rng.choice(graphs), rng.choice(graphs)
            brute = any(
                {
                    tuple(sorted((perm[u - 1], perm[v - 1])))
                    for u, v in g1.edges
                }
                == set(g2.edges)
                for perm in itertools.permutations(range(1, 6))
            )
            assert (are_isomorphic(g1, g2) is not None) == brute

    def test_canonical_representative(self):
        for g in enumerate_graphs(4):
            canon = canonical_iso_representative(g)
            assert are_isomorphic(g, canon) is not None
            assert canonical_iso_representative(canon) == canon


class TestRanksAndPowerSums:
    def test_image_ranks(self):
        for n in range(6):
            assert rank([psi_g(g) for g in enumerate_graphs(n)]) == partition_count(n)
        for n in range(5):
            assert rank([upsilon_g(g) for g in enumerate_graphs(n)]) == bell_number(n)

    def test_power_sum_examples(self):
        assert psi_power_sum(K3) == SparseElement(
            BasisTag.SYM_P, 3, {(1, 1, 1): 1, (2, 1): -3, (3,): 2}
        )
        assert psi_power_sum(K2) == SparseElement(
            BasisTag.SYM_P, 2, {(1, 1): 1, (2,): -1}
        )
        assert psi_power_sum(Graph(4)) == SparseElement(
            BasisTag.SYM_P, 4, {(1, 1, 1, 1): 1}
        )

    def test_power_sum_matches_monomial_route(self):
        from chromkit.algebra import power_sum_to_monomial

        for n in range(6):
            for g in enumerate_graphs(n):
                assert power_sum_to_monomial(psi_power_sum(g)) == psi_g(g)


class TestZonotope:
    def test_coefficients(self):
        z = zonotope(P3)
        assert z.coeffs == {
            frozenset({1, 2}): Fraction(1),
            frozenset({2, 3}): Fraction(1),
        }
        assert zonotope(E3).coeffs == {}

    def test_compatibility_with_embedding(self):
        from chromkit.algebra import embed_wsym_in_wqsym
        from chromkit.polytopes import psi_hgp, upsilon_hgp

        for n in range(6):
            for g in enumerate_graphs(n):
                assert upsilon_hgp(zonotope(g)) == embed_wsym_in_wqsym(upsilon_g(g))

    def test_psi_compatibility_through_qsym(self):
        from chromkit.polytopes import psi_hgp

        for n in range(5):
            for g in enumerate_graphs(n):
                quasi = psi_hgp(zonotope(g))
                expanded = {}
                for lam, c in psi_g(g).terms.items():
                    for alpha in set(itertools.permutations(lam)):
                        expanded[alpha] = expanded.get(alpha, Fraction(0)) + c
                assert quasi.terms == {k: v for k, v in expanded.items() if v}
