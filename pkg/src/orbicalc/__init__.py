"""Exact calculator and verification harness for tame orbifold curves."""

from .curves import (
    CurveTag,
    OrbifoldCurve,
    PointId,
    RamificationProfile,
    TameBranchData,
    branch_data_leq,
    branch_data_of_cover,
    identity_profile,
    is_etale_morphism,
    is_geometric_witness,
    is_morphism,
    kummer_profile,
    pullback_branch_data,
    riemann_hurwitz_genus,
    tame_order_after_pullback,
)
from .monodromy import (
    MonodromyDatum,
    Perm,
    group_order,
    is_connected,
    is_galois,
    is_genuinely_ramified,
    kummer_datum,
    max_etale_subcover,
    normal_closure_orbits,
    oracle_is_genuinely_ramified,
    parse_perm,
    ramification_profile_of,
)
from .divisors import (
    OrbDivisor,
    OrbLineClass,
    class_of,
    cover_pullback,
    cover_pullback_class,
    h0,
    hom_dim,
    iota_pullback,
    iota_pullback_class,
)
from .bundles import (
    HNReport,
    HNStratum,
    OrbBundle,
    iota_pullback_bundle,
    pullback_bundle,
    pullback_data_bundle,
)
from .equivariant import (
    CyclicCoverSpec,
    EqBundle,
    EqLineBundle,
    equivariant_pullback,
    h0_invariants,
    hom_dim_equivariant,
    hom_dim_plain,
    invariant_pushforward,
    pushforward_structure,
)
from .errors import SchemaError

__version__ = "0.1.0"
