"""Exact-arithmetic chromatic invariants of graphs and hypergraphic polytopes.

The package computes chromatic (quasi)symmetric functions in commuting and
non-commuting variables, produces constructive kernel certificates over the
modular, simple, and isomorphism relations, and reproduces the dimension,
basis, and specialization results of the underlying theory at desk scale.
All coefficients are exact rationals; the only floating point lives in the
asymptotic constants.
"""

from .algebra import (
    BasisTag,
    SparseElement,
    comu,
    embed_wsym_in_wqsym,
    multiply_sym_monomial,
    power_sum_to_monomial,
    rank,
)
from .augmented import (
    OrderedMatching,
    QClassPoly,
    RElement,
    augmented_psi,
    matching_side,
    ordered_matchings,
    power_sum_matching_side,
    specialize_k,
)
from .combinatorics import (
    SetComposition,
    SetPartition,
    bell_number,
    coarsening_leq,
    enumerate_set_compositions,
    enumerate_set_partitions,
    minima_block,
    ordered_bell_number,
)
from .dimension import RationalSeries, gamma_tau, sc_egf, sc_enumerate
from .errors import ChromkitError, DomainError, SizeCapError, ValidationError
from .graphs import (
    Graph,
    KernelCertificateG,
    ModularRelationG,
    all_modular_relations,
    are_isomorphic,
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
from .hopf import (
    HopfInstance,
    Poset,
    TensorSlot,
    coproduct_part,
    delta_pi,
    enumerate_posets,
    graph_instance,
    multicharacter,
    polytope_instance,
    poset_instance,
    universal_upsilon,
    wqsym_coproduct,
    wqsym_product,
)
from .polytopes import (
    FaceResult,
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
)
from .scorder import (
    BarredSetComposition,
    SCClass,
    class_from_ibsc,
    composition_leq_prime,
    enumerate_ibscs,
    ibsc_from_class,
    ibsc_roundtrip,
    sc_class_count,
    sc_classes,
    sc_equivalent,
    sc_equivalent_structural,
    sc_preorder_leq,
)

__version__ = "0.1.0"
