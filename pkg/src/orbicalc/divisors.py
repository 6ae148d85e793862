"""Stacky divisors and line-bundle classes on tame orbifold curves.

A divisor is an integer combination of points; a point of branch order
``n`` contributes ``1/n`` per unit coefficient to the degree.  On a
genus-0 base, principal divisors are pullbacks of degree-0 divisors from
the coarse curve, so integer multiples of ``n_x . x`` shuffle freely and a
line-bundle class is pinned exactly by the residues of the coefficients
at the stacky points together with the total rational degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Mapping

from .curves import (
    OrbifoldCurve,
    PointId,
    RamificationProfile,
    TameBranchData,
    branch_data_leq,
    pullback_branch_data,
)


@dataclass(frozen=True)
class OrbDivisor:
    """Finitely supported integer combination of points of an orbifold curve."""

    ambient: OrbifoldCurve
    coefficients: Mapping[PointId, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned: dict[PointId, int] = {}
        for point, coeff in self.coefficients.items():
            if point.curve != self.ambient.curve:
                raise ValueError(
                    f"point {point.label} is not on the ambient curve"
                )
            if coeff != 0:
                cleaned[point] = coeff
        object.__setattr__(self, "coefficients", cleaned)

    @classmethod
    def zero(cls, ambient: OrbifoldCurve) -> "OrbDivisor":
        return cls(ambient, {})

    @property
    def support(self) -> tuple[PointId, ...]:
        return tuple(sorted(self.coefficients, key=lambda p: p.label))

    def coefficient(self, point: PointId) -> int:
        return self.coefficients.get(point, 0)

    def degree(self) -> Fraction:
        """Stacky degree: each coefficient weighted by 1/order."""
        return sum(
            (
                Fraction(coeff, self.ambient.order_at(point))
                for point, coeff in self.coefficients.items()
            ),
            Fraction(0),
        )

    def _combine(self, other: "OrbDivisor", sign: int) -> "OrbDivisor":
        if other.ambient != self.ambient:
            raise ValueError("divisors live on different orbifold curves")
        merged = dict(self.coefficients)
        for point, coeff in other.coefficients.items():
            merged[point] = merged.get(point, 0) + sign * coeff
        return OrbDivisor(self.ambient, merged)

    def __add__(self, other: "OrbDivisor") -> "OrbDivisor":
        return self._combine(other, 1)

    def __sub__(self, other: "OrbDivisor") -> "OrbDivisor":
        return self._combine(other, -1)

    def __neg__(self) -> "OrbDivisor":
        return OrbDivisor(
            self.ambient, {p: -c for p, c in self.coefficients.items()}
        )


@dataclass(frozen=True)
class OrbLineClass:
    """Line-bundle class on a genus-0 orbifold curve.

    Stored as the reduced residues of the divisor coefficients at the
    stacky points plus the total rational degree; the degree minus the
    residue weights is an integer (the coarse floor degree).
    """

    ambient: OrbifoldCurve
    residues: Mapping[PointId, int] = field(default_factory=dict)
    total_degree: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if self.ambient.genus != 0:
            raise ValueError("line-bundle classes require a genus-0 base")
        cleaned: dict[PointId, int] = {}
        for point, residue in self.residues.items():
            order = self.ambient.order_at(point)
            if order < 2:
                raise ValueError(
                    f"residue at non-stacky point {point.label}"
                )
            if not 0 <= residue < order:
                raise ValueError(
                    f"residue {residue} at {point.label} not reduced mod {order}"
                )
            if residue:
                cleaned[point] = residue
        object.__setattr__(self, "residues", cleaned)
        object.__setattr__(self, "total_degree", Fraction(self.total_degree))
        coarse = self.total_degree - self._weight_sum()
        if coarse.denominator != 1:
            raise ValueError(
                f"degree {self.total_degree} incompatible with residues"
            )

    def _weight_sum(self) -> Fraction:
        return sum(
            (
                Fraction(r, self.ambient.order_at(p))
                for p, r in self.residues.items()
            ),
            Fraction(0),
        )

    @classmethod
    def trivial(cls, ambient: OrbifoldCurve) -> "OrbLineClass":
        return cls(ambient, {}, Fraction(0))

    def is_trivial(self) -> bool:
        return not self.residues and self.total_degree == 0

    def residue_at(self, point: PointId) -> int:
        return self.residues.get(point, 0)

    def __add__(self, other: "OrbLineClass") -> "OrbLineClass":
        if other.ambient != self.ambient:
            raise ValueError("classes live on different orbifold curves")
        residues: dict[PointId, int] = dict(self.residues)
        for point, r in other.residues.items():
            order = self.ambient.order_at(point)
            residues[point] = (residues.get(point, 0) + r) % order
        return OrbLineClass(
            self.ambient, residues, self.total_degree + other.total_degree
        )

    def __neg__(self) -> "OrbLineClass":
        residues = {
            p: (-r) % self.ambient.order_at(p)
            for p, r in self.residues.items()
        }
        return OrbLineClass(self.ambient, residues, -self.total_degree)

    def __sub__(self, other: "OrbLineClass") -> "OrbLineClass":
        return self + (-other)

    def floor_view(self) -> tuple[int, dict[PointId, Fraction]]:
        """Coarse floor degree and fractional weights at the stacky points."""
        weights = {
            p: Fraction(r, self.ambient.order_at(p))
            for p, r in self.residues.items()
        }
        coarse = self.total_degree - sum(weights.values(), Fraction(0))
        return int(coarse), weights


def class_of(divisor: OrbDivisor) -> OrbLineClass:
    """Line-bundle class of a divisor on a genus-0 orbifold curve.

    Divisors are linearly equivalent exactly when their classes are
    equal: residues at stacky points plus degree classify.
    """
    ambient = divisor.ambient
    if ambient.genus != 0:
        raise ValueError("linear equivalence is decided on genus 0 only")
    residues: dict[PointId, int] = {}
    for point, coeff in divisor.coefficients.items():
        order = ambient.order_at(point)
        if order > 1:
            residues[point] = coeff % order
    return OrbLineClass(ambient, residues, divisor.degree())


def h0(line_class: OrbLineClass) -> int:
    """Dimension of global sections: sections of the coarse floor bundle."""
    coarse, _ = line_class.floor_view()
    return max(0, coarse + 1)


def hom_dim(first: OrbLineClass, second: OrbLineClass) -> int:
    """Dimension of maps of line classes: sections of the difference."""
    if first.ambient != second.ambient:
        raise ValueError("classes live on different orbifold curves")
    return h0(second - first)


def _refined(ambient: OrbifoldCurve, finer: TameBranchData) -> OrbifoldCurve:
    if not branch_data_leq(ambient.data, finer):
        raise ValueError("refined branch data must dominate the current one")
    return OrbifoldCurve(ambient.curve, finer)


def iota_pullback(divisor: OrbDivisor, finer: TameBranchData) -> OrbDivisor:
    """Transport a divisor along a refinement of the branch data.

    The coefficient at a point scales by the ratio of the new order to
    the old one, which keeps the stacky degree unchanged.
    """
    refined = _refined(divisor.ambient, finer)
    coefficients = {}
    for point, coeff in divisor.coefficients.items():
        old = divisor.ambient.order_at(point)
        new = finer.order_at(point)
        coefficients[point] = coeff * (new // old)
    return OrbDivisor(refined, coefficients)


def iota_pullback_class(
    line_class: OrbLineClass, finer: TameBranchData
) -> OrbLineClass:
    """Class-level refinement transport; the degree is unchanged."""
    refined = _refined(line_class.ambient, finer)
    residues: dict[PointId, int] = {}
    for point, residue in line_class.residues.items():
        old = line_class.ambient.order_at(point)
        new = finer.order_at(point)
        residues[point] = (residue * (new // old)) % new
    return OrbLineClass(refined, residues, line_class.total_degree)


def cover_pullback(
    divisor: OrbDivisor, profile: RamificationProfile
) -> OrbDivisor:
    """Pull a divisor back along a cover, onto the pulled-back branch data.

    The coefficient at a preimage of index ``e`` over a point of order
    ``n`` scales by ``e / gcd(n, e)``, the degree of the pulled-back
    local datum over the one downstairs; summing a fiber multiplies the
    stacky degree by the covering degree.
    """
    ambient = divisor.ambient
    if ambient.curve != profile.target:
        raise ValueError("divisor is not on the target of the cover")
    pulled_data = pullback_branch_data(profile, ambient.data)
    pulled_ambient = OrbifoldCurve(profile.source, pulled_data)
    coefficients: dict[PointId, int] = {}
    for point, coeff in divisor.coefficients.items():
        n = ambient.order_at(point)
        for preimage, e in profile.preimages(point):
            coefficients[preimage] = (
                coefficients.get(preimage, 0) + coeff * (e // gcd(n, e))
            )
    return OrbDivisor(pulled_ambient, coefficients)


def _representative(line_class: OrbLineClass, avoid: set[str]) -> OrbDivisor:
    """A divisor with the given class; extra degree sits at a fresh point."""
    ambient = line_class.ambient
    coefficients: dict[PointId, int] = dict(line_class.residues)
    coarse, _ = line_class.floor_view()
    if coarse:
        label = "aux"
        taken = avoid | {p.label for p in ambient.data.orders}
        taken |= {p.label for p in line_class.residues}
        while label in taken:
            label += "_"
        coefficients[PointId(ambient.curve, label)] = coarse
    return OrbDivisor(ambient, coefficients)


def cover_pullback_class(
    line_class: OrbLineClass, profile: RamificationProfile
) -> OrbLineClass:
    """Class-level cover pullback via a representative divisor."""
    avoid = {p.label for p in profile.fibers}
    return class_of(cover_pullback(_representative(line_class, avoid), profile))
