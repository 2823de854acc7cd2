"""chainlab: exact-arithmetic normed chain complexes at finite scale.

Everything computes over Python Fractions; no float enters any
mathematical path.  See the README for the command line interface and
the bundled corpus.
"""
from .rationals import rat, rat_str
from .linalg import Matrix
from .complexes import (
    NormSpec, NormedComplex, ChainMap, ValidationReport,
    HOMOLOGICAL, COHOMOLOGICAL, L1, LINF,
    validate, dual, suspension, completion, chain_map, identity_map,
    zero_map, negate, scale_map, compose, dual_map, operator_norm,
    operator_norm_matrix, unit_l1, unit_linf,
)
from .lp import (
    LinearProgram, LpSolution, linear_program, solve,
    min_weighted_l1, min_weighted_linf,
    OPTIMAL, INFEASIBLE, UNBOUNDED,
)
from .homology import (
    HomologySpace, HomologyClass, DualityReport,
    homology, homology_dims, homology_class, is_cycle,
    seminorm, coseminorm, kronecker, seminorm_duality, vanishing_duality,
    evaluation_pairing, induced_matrix, homology_iso_degrees,
)
from .cones import (
    Cone, TranslationReport, ProbeCheck,
    cone, cocone, shifted_cocone, cone_dual_iso, iso_via_cone,
    cone_rank_identity, translation_check,
)
from .simplicial import (
    SimplicialComplex, FundamentalCycle, NonOrientable, SvBound,
    PrismResult, SeriesReport,
    chain_complex, fundamental_cycle, sv_upper_bound, product_with_interval,
    level_inclusion, prism, ordered_chain_complex, invisibility_series,
    barycentric_subdivision,
)
from .groups import (
    FiniteGroup, MonomialModule, BarComplex, EquivariantComplex,
    Coinvariants, Invariants, GroupDegree, GroupHomologyResult,
    BottomIdentification, EtaResult,
    finite_group, trivial_group, cyclic_group, symmetric_group,
    direct_product, group_homomorphism_check,
    monomial_module, trivial_module, dual_module,
    bar_complex, tensor_coefficients, equivariant_complex, equivariant_dual,
    coinvariants, invariants, coinvariant_dual_identification,
    module_dual_identification, l1_homology_of_group,
    bounded_cohomology_of_group, induced_map, descend_to_coinvariants,
    bar_coinvariants, h0_against_module_coinvariants,
    h0_against_module_invariants, eta_map, theta_map, propose_domain,
    eta_coinvariant_h0,
)
from .randgen import random_complex, random_self_map, random_chain_map

__version__ = "0.1.0"
