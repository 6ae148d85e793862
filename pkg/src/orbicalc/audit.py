"""Numeric probes of the pullback-stability statements on cyclic covers.

Each audit case fixes a cyclic Kummer cover, branch data on the base
supported on the two branch points, and two rank-1 objects.  The audit
recomputes, from the modules at run time:

* the hom dimension over the orbifold base,
* the equivariant hom dimension upstairs (invariant-monomial oracle),
* the hom dimension of the pulled-back classes in the pulled-back data,
* the character pieces of the pushforward of the structure sheaf in two
  readings: the stacky degrees and the coarse floor degrees,
* the slope comparisons those pieces feed.

Statements are tagged consistent / discrepant / not-applicable per their
literal reading; nothing is asserted.  The two readings of the quotient
of the pushforward (stacky degree 0 versus coarse floor degree -1 in the
half-weights case) genuinely differ, which is exactly what the report
surfaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .bundles import OrbBundle
from .curves import OrbifoldCurve, TameBranchData
from .divisors import (
    class_of,
    cover_pullback_class,
    hom_dim,
    iota_pullback_class,
    OrbDivisor,
)
from .equivariant import (
    CyclicCoverSpec,
    equivariant_pullback,
    hom_dim_equivariant,
    pushforward_structure,
)
from .monodromy import (
    is_connected,
    is_galois,
    is_genuinely_ramified,
    kummer_datum,
    max_etale_subcover,
    ramification_profile_of,
)

CONSISTENT = "consistent"
DISCREPANT = "discrepant"
NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class AuditCase:
    """A cyclic cover, branch orders at the two branch points, two objects."""

    case_id: str
    m: int
    characteristic: int = 0
    orders: Mapping[str, int] = field(default_factory=dict)
    left: Mapping[str, int] = field(default_factory=dict)
    right: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for label in self.orders:
            if label not in ("0", "inf"):
                raise ValueError(
                    "audit branch data must be supported on the branch "
                    f"points '0' and 'inf', got {label!r}"
                )
        for label, order in self.orders.items():
            if self.m % order != 0:
                raise ValueError(
                    f"order {order} at {label!r} must divide the cover "
                    f"degree {self.m}"
                )


@dataclass
class AuditReport:
    case_id: str
    hypotheses: dict
    quantities: dict
    statuses: dict[str, str]


BUILTIN_CASES: dict[str, AuditCase] = {
    "kummer2-halfweights": AuditCase(
        "kummer2-halfweights",
        m=2,
        orders={"0": 2, "inf": 2},
        left={"0": 1},
        right={"inf": 1},
    ),
    "kummer2-trivialP": AuditCase(
        "kummer2-trivialP",
        m=2,
        orders={},
        left={},
        right={},
    ),
    "kummer2-equal": AuditCase(
        "kummer2-equal",
        m=2,
        orders={"0": 2, "inf": 2},
        left={"0": 1},
        right={"0": 1},
    ),
    "kummer3-thirds": AuditCase(
        "kummer3-thirds",
        m=3,
        orders={"0": 3, "inf": 3},
        left={"0": 1},
        right={"inf": 1},
    ),
}


def builtin_case(case_id: str) -> AuditCase:
    try:
        return BUILTIN_CASES[case_id]
    except KeyError:
        raise ValueError(
            f"unknown builtin audit case {case_id!r}; "
            f"available: {', '.join(sorted(BUILTIN_CASES))}"
        ) from None


def _divisor(ambient: OrbifoldCurve, coefficients: Mapping[str, int]) -> OrbDivisor:
    return OrbDivisor(
        ambient,
        {ambient.curve.point(label): c for label, c in coefficients.items()},
    )


def run_audit(case: AuditCase) -> AuditReport:
    spec = CyclicCoverSpec(case.m, case.characteristic)
    datum = kummer_datum(case.m, case.characteristic)

    hypotheses = {
        "cover_degree": case.m,
        "characteristic": case.characteristic,
        "connected": is_connected(datum),
        "galois": is_galois(datum),
        "genuinely_ramified": is_genuinely_ramified(datum),
        "max_etale_degree": max_etale_subcover(datum)[0],
        "branch_orders": dict(case.orders),
        "left": dict(case.left),
        "right": dict(case.right),
    }
    profile = ramification_profile_of(datum)

    target = profile.target
    base_data = TameBranchData(
        target, {target.point(label): n for label, n in case.orders.items()}
    )
    base = OrbifoldCurve(target, base_data)
    left = class_of(_divisor(base, case.left))
    right = class_of(_divisor(base, case.right))

    full = spec.target_orbifold()
    left_full = iota_pullback_class(left, full.data)
    right_full = iota_pullback_class(right, full.data)

    hom_base = hom_dim(left, right)
    hom_upstairs_equivariant = hom_dim_equivariant(
        equivariant_pullback(left_full, spec),
        equivariant_pullback(right_full, spec),
    )
    left_pulled = cover_pullback_class(left, profile)
    right_pulled = cover_pullback_class(right, profile)
    hom_upstairs_plain = hom_dim(left_pulled, right_pulled)

    pieces = pushforward_structure(spec)
    stacky_degrees = [piece.total_degree for piece in pieces]
    coarse_degrees = [piece.floor_view()[0] for piece in pieces]

    # Quotient of the pushforward by the trivial sub-bundle: the nonzero
    # character pieces, in each reading.  Pulling back multiplies degrees
    # by the cover degree.
    quotient_stacky = stacky_degrees[1:]
    quotient_coarse = coarse_degrees[1:]
    pulled_quotient_stacky = [case.m * d for d in quotient_stacky]
    pulled_quotient_coarse = [case.m * d for d in quotient_coarse]

    mu_left = left.total_degree
    mu_right = right.total_degree
    # Slope ceiling of right tensored with the quotient, per reading.
    mu_max_stacky = max(mu_right + d for d in quotient_stacky)
    mu_max_coarse = max(mu_right + d for d in quotient_coarse)

    applicable = hypotheses["galois"] and hypotheses["genuinely_ramified"]
    same_slope = mu_left == mu_right

    statuses: dict[str, str] = {}

    def tag(name: str, holds: bool, applies: bool = True) -> None:
        if not (applicable and applies):
            statuses[name] = NOT_APPLICABLE
        else:
            statuses[name] = CONSISTENT if holds else DISCREPANT

    tag(
        "negative_quotient_degree_stacky",
        all(d < 0 for d in pulled_quotient_stacky),
    )
    tag(
        "negative_quotient_degree_coarse",
        all(d < 0 for d in pulled_quotient_coarse),
    )
    tag("slope_ceiling_stacky", mu_max_stacky < mu_right)
    tag("slope_ceiling_coarse", mu_max_coarse < mu_right)
    tag(
        "hom_match_equivariant",
        hom_upstairs_equivariant == hom_base,
        applies=same_slope,
    )
    tag(
        "hom_match_plain",
        hom_upstairs_plain == hom_base,
        applies=same_slope,
    )
    pulled_stable = (
        OrbBundle.of(left_pulled).is_stable()
        and OrbBundle.of(right_pulled).is_stable()
    )
    tag("pullback_stays_stable", pulled_stable)
    # The converse statement needs a cover that is not genuinely ramified.
    statuses["unstable_pullback_exists"] = NOT_APPLICABLE

    quantities = {
        "deg_left": mu_left,
        "deg_right": mu_right,
        "hom_base": hom_base,
        "hom_upstairs_equivariant": hom_upstairs_equivariant,
        "hom_upstairs_plain": hom_upstairs_plain,
        "pushforward_degrees_stacky": stacky_degrees,
        "pushforward_degrees_coarse": coarse_degrees,
        "pulled_quotient_degrees_stacky": pulled_quotient_stacky,
        "pulled_quotient_degrees_coarse": pulled_quotient_coarse,
        "mu_max_quotient_stacky": mu_max_stacky,
        "mu_max_quotient_coarse": mu_max_coarse,
        "pulled_left_degree": left_pulled.total_degree,
        "pulled_right_degree": right_pulled.total_degree,
    }
    return AuditReport(case.case_id, hypotheses, quantities, statuses)
