"""Decomposable orbifold vector bundles: sums of line-bundle classes.

For a direct sum of line classes every line subsheaf admits a nonzero
map to some summand, so its degree is bounded by the top summand degree.
Semistability is therefore equality of all summand slopes, polystability
coincides with it, and stability holds only in rank 1; the slope
filtration groups summands by slope in strictly decreasing order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curves import OrbifoldCurve, RamificationProfile, TameBranchData, is_morphism
from .divisors import (
    OrbLineClass,
    cover_pullback_class,
    iota_pullback_class,
    pullback_branch_data,
)


@dataclass(frozen=True)
class HNStratum:
    slope: Fraction
    indices: tuple[int, ...]


@dataclass(frozen=True)
class HNReport:
    """Slope strata in strictly decreasing order, partitioning the summands."""

    strata: tuple[HNStratum, ...]

    def __post_init__(self) -> None:
        slopes = [s.slope for s in self.strata]
        if any(later >= earlier for earlier, later in zip(slopes, slopes[1:])):
            raise ValueError("strata slopes must strictly decrease")

    @property
    def slopes(self) -> tuple[Fraction, ...]:
        return tuple(s.slope for s in self.strata)


@dataclass(frozen=True)
class OrbBundle:
    """Formal direct sum of line-bundle classes on one orbifold curve."""

    ambient: OrbifoldCurve
    summands: tuple[OrbLineClass, ...]

    def __post_init__(self) -> None:
        if not self.summands:
            raise ValueError("a bundle needs at least one summand")
        for summand in self.summands:
            if summand.ambient != self.ambient:
                raise ValueError("summand on a different orbifold curve")

    @classmethod
    def of(cls, *summands: OrbLineClass) -> "OrbBundle":
        if not summands:
            raise ValueError("a bundle needs at least one summand")
        return cls(summands[0].ambient, tuple(summands))

    def rank(self) -> int:
        return len(self.summands)

    def determinant(self) -> OrbLineClass:
        det = self.summands[0]
        for summand in self.summands[1:]:
            det = det + summand
        return det

    def degree(self) -> Fraction:
        return self.determinant().total_degree

    def slope(self) -> Fraction:
        return self.degree() / self.rank()

    def summand_slopes(self) -> tuple[Fraction, ...]:
        return tuple(s.total_degree for s in self.summands)

    def hn(self) -> HNReport:
        """Group the summands by slope, top slope first.

        Each stratum is an equal-slope (hence semistable) sum, and the
        slopes strictly decrease: the slope filtration of the sum.
        """
        by_slope: dict[Fraction, list[int]] = {}
        for index, summand in enumerate(self.summands):
            by_slope.setdefault(summand.total_degree, []).append(index)
        strata = tuple(
            HNStratum(slope, tuple(by_slope[slope]))
            for slope in sorted(by_slope, reverse=True)
        )
        return HNReport(strata)

    def mu_max(self) -> Fraction:
        return max(self.summand_slopes())

    def is_semistable(self) -> bool:
        return len(set(self.summand_slopes())) == 1

    def is_polystable(self) -> bool:
        return self.is_semistable()

    def is_stable(self) -> bool:
        return self.rank() == 1

    def tensor_line(self, line: OrbLineClass) -> "OrbBundle":
        """Twist by a line class; every slope shifts by its degree."""
        if line.ambient != self.ambient:
            raise ValueError("twisting class on a different orbifold curve")
        return OrbBundle(
            self.ambient, tuple(s + line for s in self.summands)
        )

    def direct_sum(self, other: "OrbBundle") -> "OrbBundle":
        if other.ambient != self.ambient:
            raise ValueError("bundles on different orbifold curves")
        return OrbBundle(self.ambient, self.summands + other.summands)

    def parabolic_view(self) -> list[tuple[int, dict]]:
        """Per-summand coarse floor degree and fractional weights."""
        return [s.floor_view() for s in self.summands]

    def parabolic_slope(self) -> Fraction:
        total = Fraction(0)
        for coarse, weights in self.parabolic_view():
            total += coarse + sum(weights.values(), Fraction(0))
        return total / self.rank()


def iota_pullback_bundle(bundle: OrbBundle, finer: TameBranchData) -> OrbBundle:
    """Transport a bundle along a refinement of the branch data."""
    summands = tuple(iota_pullback_class(s, finer) for s in bundle.summands)
    return OrbBundle(summands[0].ambient, summands)


def pullback_bundle(
    bundle: OrbBundle,
    profile: RamificationProfile,
    source_data: TameBranchData,
) -> OrbBundle:
    """Pull a bundle back along a cover onto prescribed source branch data.

    The cover must define a morphism of orbifold curves, i.e. the source
    data must dominate the pulled-back target data; the pullback factors
    through the pulled-back data and is then refined.
    """
    if not is_morphism(profile, source_data, bundle.ambient.data):
        raise ValueError(
            "the cover does not define a morphism onto the given branch data"
        )
    pulled = tuple(
        cover_pullback_class(s, profile) for s in bundle.summands
    )
    refined = tuple(iota_pullback_class(s, source_data) for s in pulled)
    return OrbBundle(refined[0].ambient, refined)


def pullback_data_bundle(
    bundle: OrbBundle, profile: RamificationProfile
) -> OrbBundle:
    """Pull back onto the pulled-back branch data itself."""
    source_data = pullback_branch_data(profile, bundle.ambient.data)
    return pullback_bundle(bundle, profile, source_data)
