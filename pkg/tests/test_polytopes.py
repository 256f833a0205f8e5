import itertools
import random
from fractions import Fraction

import pytest

from chromkit.algebra import BasisTag, SparseElement, rank
from chromkit.combinatorics import SetComposition, enumerate_set_compositions
from chromkit.errors import DomainError, SizeCapError, ValidationError
from chromkit.polytopes import (
    HypergraphicPolytope,
    ModularRelationHGP,
    basic_polytope,
    face,
    is_generic,
    modular_relation_hgp,
    n_basis_element,
    psi_hgp,
    reduce_to_basic_basis,
    upsilon_hgp,
    upsilon_of_combination,
)
from chromkit.scorder import sc_classes, sc_preorder_leq

fs = frozenset


def poly(n, *sets):
    return HypergraphicPolytope.from_support(n, [fs(s) for s in sets])


def sc(n, *blocks):
    return SetComposition(n, blocks)


def all_fundamental(n):
    subsets = [
        fs(s) for r in range(1, n + 1) for s in itertools.combinations(range(1, n + 1), r)
    ]
    for mask in range(1 << len(subsets)):
        yield HypergraphicPolytope.from_support(
            n, (s for i, s in enumerate(subsets) if mask >> i & 1)
        )


class TestPolytopeType:
    def test_zero_coefficients_dropped(self):
        q = HypergraphicPolytope(2, {fs({1}): 0, fs({1, 2}): 2})
        assert q.coeffs == {fs({1, 2}): Fraction(2)}

    def test_validation(self):
        with pytest.raises(ValidationError):
            HypergraphicPolytope(2, {fs(): 1})
        with pytest.raises(ValidationError):
            HypergraphicPolytope(2, {fs({3}): 1})

    def test_negative_data_allowed_but_operations_reject(self):
        q = HypergraphicPolytope(2, {fs({1, 2}): -1})
        assert not q.is_hypergraphic()
        with pytest.raises(DomainError):
            upsilon_hgp(q)
        with pytest.raises(DomainError):
            face(q, sc(2, (1, 2)))

    def test_minkowski_add_is_coefficientwise(self):
        a = poly(2, {1}, {1, 2})
        b = HypergraphicPolytope(2, {fs({1, 2}): Fraction(1, 2)})
        s = a.minkowski_add(b)
        assert s.coeffs[fs({1, 2})] == Fraction(3, 2)

    def test_point_detection(self):
        assert poly(2, {1}, {2}).is_point()
        assert not poly(2, {1, 2}).is_point()
        assert HypergraphicPolytope(3).is_point()

    def test_json_round_trip(self):
        q = HypergraphicPolytope(
            3, {fs({1, 3}): Fraction(2, 3), fs({2}): Fraction(5)}
        )
        assert HypergraphicPolytope.from_json_obj(q.to_json_obj()) == q


class TestFaces:
    # the running example: simplex on {1,2,3} plus simplex on {1,2}
    q = poly(3, {1, 2, 3}, {1, 2})

    def test_generic_coloring(self):
        g = sc(3, (2,), (1, 3))
        result = face(self.q, g)
        assert result.polytope == HypergraphicPolytope(3, {fs({2}): 2})
        assert result.is_point
        assert is_generic(self.q, g)

    def test_non_generic_coloring(self):
        f = sc(3, (1, 2), (3,))
        result = face(self.q, f)
        # the minima formula merges both summands onto {1,2} with weight two
        assert result.polytope == HypergraphicPolytope(3, {fs({1, 2}): 2})
        assert not result.is_point
        assert not is_generic(self.q, f)

    def test_single_simplex_face(self):
        q = poly(3, {1, 2})
        assert face(q, sc(3, (1, 2), (3,))).polytope == poly(3, {1, 2})

    def test_point_is_generic_everywhere(self):
        q = HypergraphicPolytope(3)
        for pc in enumerate_set_compositions(3):
            assert is_generic(q, pc)

    def test_genericity_equals_point_face(self):
        rng = random.Random(3)
        for _ in range(40):
            q = rng.choice(list(all_fundamental(3)))
            for pc in enumerate_set_compositions(3):
                assert is_generic(q, pc) == face(q, pc).is_point

    def test_face_additivity(self):
        rng = random.Random(4)
        fundamentals = list(all_fundamental(3))
        comps = list(enumerate_set_compositions(3))
        for _ in range(60):
            q1, q2 = rng.choice(fundamentals), rng.choice(fundamentals)
            pc = rng.choice(comps)
            assert face(q1.minkowski_add(q2), pc).polytope == face(
                q1, pc
            ).polytope.minkowski_add(face(q2, pc).polytope)

    def test_mismatched_ground_set(self):
        with pytest.raises(DomainError):
            face(self.q, sc(2, (1, 2)))


class TestChromaticMap:
    def test_point_polytope_on_two(self):
        assert upsilon_hgp(poly(2, {1}, {2})) == SparseElement(
            BasisTag.WQSYM_M,
            2,
            {sc(2, (1,), (2,)): 1, sc(2, (2,), (1,)): 1, sc(2, (1, 2)): 1},
        )

    def test_basic_polytope_on_two(self):
        assert upsilon_hgp(poly(2, {1}, {2}, {1, 2})) == SparseElement(
            BasisTag.WQSYM_M, 2, {sc(2, (1,), (2,)): 1, sc(2, (2,), (1,)): 1}
        )

    def test_psi_examples(self):
        assert psi_hgp(poly(2, {1}, {2}, {1, 2})) == SparseElement(
            BasisTag.QSYM_M, 2, {(1, 1): 2}
        )
        assert psi_hgp(HypergraphicPolytope(1)) == SparseElement(
            BasisTag.QSYM_M, 1, {(1,): 1}
        )

    def test_upsilon_depends_only_on_support(self):
        rng = random.Random(8)
        for q in itertools.islice(all_fundamental(3), 1, 40):
            rescaled = HypergraphicPolytope(
                3,
                {J: Fraction(rng.randint(1, 7), rng.randint(1, 4)) for J in q.coeffs},
            )
            assert upsilon_hgp(q) == upsilon_hgp(rescaled)

    def test_constant_on_classes(self):
        for n in range(5):
            for q in itertools.islice(all_fundamental(n), 0, 40):
                u = upsilon_hgp(q)
                for c in sc_classes(n):
                    coeffs = {u.coefficient(m) for m in c.members}
                    assert len(coeffs) == 1

    def test_genericity_constant_on_classes_n5(self):
        rng = random.Random(21)
        classes = sc_classes(5)
        for _ in range(8):
            subsets = [
                fs(s)
                for r in range(1, 6)
                for s in itertools.combinations(range(1, 6), r)
            ]
            q = HypergraphicPolytope.from_support(
                5, (s for s in subsets if rng.random() < 0.4)
            )
            for c in classes:
                values = {is_generic(q, m) for m in c.members}
                assert len(values) == 1

    def test_size_cap(self):
        with pytest.raises(SizeCapError):
            upsilon_hgp(HypergraphicPolytope(9))


class TestBasicPolytopes:
    def test_supports(self):
        assert poly(2, {1}, {2}) == basic_polytope(sc(2, (1, 2)))
        assert poly(2, {1}, {2}, {1, 2}) == basic_polytope(sc(2, (1,), (2,)))

    def test_equal_on_equivalent_compositions(self):
        a = sc(4, (1, 2), (3,), (4,))
        b = sc(4, (1, 2), (4,), (3,))
        assert basic_polytope(a) == basic_polytope(b)

    def test_triangularity(self):
        for n in range(5):
            classes = sc_classes(n)
            for c in classes:
                image = upsilon_hgp(basic_polytope(c.representative))
                expected = SparseElement.zero(BasisTag.WQSYM_M, n)
                for d in classes:
                    if sc_preorder_leq(c.representative, d.representative):
                        expected = expected + n_basis_element(d)
                assert image == expected

    def test_n_basis_is_class_indicator(self):
        classes = sc_classes(3)
        for c in classes:
            el = n_basis_element(c)
            assert set(el.terms) == set(c.members)
            assert all(v == 1 for v in el.terms.values())


class TestModularRelations:
    def test_known_covering_families(self):
        rel = ModularRelationHGP(
            4, [{1, 4}, {1, 2, 4}], [{1, 2}, {2, 3}, {2, 3, 4}]
        )
        combo = modular_relation_hgp(rel)
        assert len(combo) == 8
        assert upsilon_of_combination(combo).is_zero()

    def test_zonotope_image_of_graph_relation(self):
        from chromkit.graphs import Graph, ModularRelationG, zonotope

        g = Graph(3, [(1, 2)])
        rel_g = ModularRelationG(g, (1, 3), (2, 3), (1, 2))
        rel_q = ModularRelationHGP(3, [{1, 2}], [{1, 3}, {2, 3}])
        combo = modular_relation_hgp(rel_q)
        expected = {
            zonotope(h): c for h, c in rel_g.expansion().items()
        }
        assert combo == expected
        assert upsilon_of_combination(combo).is_zero()

    def test_support_complement_family_valid_iff_not_basic(self):
        # the support/complement construction covers exactly when the
        # support is not itself a singleton-minima family
        from chromkit.scorder import singleton_family

        basic_families = {
            frozenset(singleton_family(pc)) for pc in enumerate_set_compositions(3)
        }
        for q in all_fundamental(3):
            support = q.support()
            complement = [
                fs(s)
                for r in range(1, 4)
                for s in itertools.combinations(range(1, 4), r)
                if fs(s) not in support
            ]
            is_basic = frozenset(q.support_masks()) in basic_families
            if is_basic:
                with pytest.raises(ValidationError):
                    ModularRelationHGP(3, support, complement)
                continue
            rel = ModularRelationHGP(3, support, complement)
            combo = modular_relation_hgp(rel)
            assert upsilon_of_combination(combo).is_zero()

    def test_covering_failure_names_witness(self):
        with pytest.raises(ValidationError) as err:
            ModularRelationHGP(2, [], [])
        assert "covering" in str(err.value)

    def test_overlapping_families_rejected(self):
        with pytest.raises(ValidationError):
            ModularRelationHGP(2, [{1, 2}], [{1, 2}])


class TestReduceToBasicBasis:
    def test_basic_polytope_reduces_to_itself(self):
        classes = sc_classes(3)
        for c in classes:
            zeta = reduce_to_basic_basis(basic_polytope(c.representative))
            assert zeta == {c: Fraction(1)}

    def test_point_polytope(self):
        zeta = reduce_to_basic_basis(HypergraphicPolytope(3))
        image = SparseElement.zero(BasisTag.WQSYM_M, 3)
        for c, z in zeta.items():
            image = image + upsilon_hgp(basic_polytope(c.representative)).scale(z)
        assert image == upsilon_hgp(HypergraphicPolytope(3))

    def test_all_fundamental_on_three(self):
        for q in all_fundamental(3):
            zeta = reduce_to_basic_basis(q)  # verifies the identity internally
            assert all(isinstance(v, Fraction) for v in zeta.values())

    def test_zonotope_of_path(self):
        from chromkit.graphs import Graph, zonotope

        q = zonotope(Graph(3, [(1, 2), (2, 3)]))
        zeta = reduce_to_basic_basis(q)
        image = SparseElement.zero(BasisTag.WQSYM_M, 3)
        for c, z in zeta.items():
            image = image + upsilon_hgp(basic_polytope(c.representative)).scale(z)
        assert image == upsilon_hgp(q)

    def test_size_cap(self):
        with pytest.raises(SizeCapError):
            reduce_to_basic_basis(HypergraphicPolytope(7))


class TestImageRank:
    def test_rank_on_three_is_sc3(self):
        images = [upsilon_hgp(q) for q in all_fundamental(3)]
        assert rank(images) == 8
        # strictly smaller than the ambient dimension
        assert 8 < 13
