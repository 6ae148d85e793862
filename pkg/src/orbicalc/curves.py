"""Tame orbifold curves: branch data and cover skeletons.

A curve is a symbolic tag (name, genus, ambient characteristic); points are
labels on a curve.  Branch data assigns a tame cyclic order ``n >= 2`` to
finitely many points, which is the complete local datum in the tame case:
a tame local Galois extension is cyclic and determined by its degree.

A cover is represented by its ramification skeleton only: the degree and,
over each genuinely branched point, the partition of the degree into
ramification indices.  Preimage points carry no geometry of their own and
are named deterministically ``"<label>.<i>"`` with ``i`` indexing the
partition sorted in descending order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Mapping


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def _check_tame(value: int, characteristic: int, what: str) -> None:
    if characteristic and value % characteristic == 0:
        raise ValueError(
            f"wild {what} {value} in characteristic {characteristic}"
        )


@dataclass(frozen=True)
class CurveTag:
    """Symbolic smooth projective curve: a name, a genus and a characteristic."""

    name: str
    genus: int
    characteristic: int = 0

    def __post_init__(self) -> None:
        if self.genus < 0:
            raise ValueError(f"genus must be non-negative, got {self.genus}")
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise ValueError(
                f"characteristic must be 0 or prime, got {self.characteristic}"
            )

    def point(self, label: str) -> "PointId":
        return PointId(self, label)


@dataclass(frozen=True)
class PointId:
    """A closed point, identified by a label unique on its curve."""

    curve: CurveTag
    label: str

    def __post_init__(self) -> None:
        if not self.label:
            raise ValueError("point label must be non-empty")


def preimage_point(source: CurveTag, x: PointId, index: int) -> PointId:
    """Deterministic name for the ``index``-th preimage of ``x`` on ``source``."""
    return PointId(source, f"{x.label}.{index}")


@dataclass(frozen=True)
class TameBranchData:
    """Finitely supported assignment of tame cyclic orders to points.

    Order 1 entries are silently dropped (they mean "no branch datum
    here"); orders must be >= 1 and coprime to the curve characteristic.
    """

    curve: CurveTag
    orders: Mapping[PointId, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned: dict[PointId, int] = {}
        for point, order in self.orders.items():
            if point.curve != self.curve:
                raise ValueError(
                    f"point {point.label} lives on {point.curve.name}, "
                    f"not on {self.curve.name}"
                )
            if order < 1:
                raise ValueError(f"branch order must be >= 1, got {order}")
            _check_tame(order, self.curve.characteristic, "branch order")
            if order > 1:
                cleaned[point] = order
        labels = [p.label for p in cleaned]
        if len(labels) != len(set(labels)):
            raise ValueError("duplicate point labels in branch data")
        object.__setattr__(self, "orders", cleaned)

    @classmethod
    def trivial(cls, curve: CurveTag) -> "TameBranchData":
        return cls(curve, {})

    @property
    def support(self) -> tuple[PointId, ...]:
        return tuple(sorted(self.orders, key=lambda p: p.label))

    def is_trivial(self) -> bool:
        return not self.orders

    def order_at(self, point: PointId) -> int:
        return self.orders.get(point, 1)

    def __le__(self, other: "TameBranchData") -> bool:
        return branch_data_leq(self, other)

    def __ge__(self, other: "TameBranchData") -> bool:
        return branch_data_leq(other, self)


@dataclass(frozen=True)
class OrbifoldCurve:
    """A curve together with tame branch data on it."""

    curve: CurveTag
    data: TameBranchData

    def __post_init__(self) -> None:
        if self.data.curve != self.curve:
            raise ValueError("branch data lives on a different curve")

    @property
    def genus(self) -> int:
        return self.curve.genus

    @property
    def characteristic(self) -> int:
        return self.curve.characteristic

    def order_at(self, point: PointId) -> int:
        return self.data.order_at(point)

    def is_stacky(self, point: PointId) -> bool:
        return self.data.order_at(point) > 1


def expected_source_genus(
    target_genus: int, degree: int, partitions: list[tuple[int, ...]]
) -> int:
    """Genus forced on the total space by the tame genus count.

    Solves ``2g' - 2 = degree * (2g - 2) + sum(e - 1)`` and raises if the
    solution is not a non-negative integer.
    """
    total = sum(e - 1 for part in partitions for e in part)
    rhs = degree * (2 * target_genus - 2) + total
    if rhs % 2 != 0:
        raise ValueError(
            f"inconsistent ramification skeleton: odd genus count {rhs}"
        )
    genus = (rhs + 2) // 2
    if genus < 0:
        raise ValueError(
            f"inconsistent ramification skeleton: negative genus {genus}"
        )
    return genus


@dataclass(frozen=True)
class RamificationProfile:
    """Skeleton of a finite cover: degree plus index partitions over branch points.

    ``fibers`` maps each genuinely branched target point to the partition
    of the degree given by the ramification indices of its preimages.  A
    listed fiber must contain an index > 1; unramified points are simply
    omitted.  With ``galois`` set, all indices within a fiber must agree.
    """

    source: CurveTag
    target: CurveTag
    degree: int
    fibers: Mapping[PointId, tuple[int, ...]] = field(default_factory=dict)
    galois: bool = False

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise ValueError(f"degree must be positive, got {self.degree}")
        if self.source.characteristic != self.target.characteristic:
            raise ValueError("source and target characteristics differ")
        normalized: dict[PointId, tuple[int, ...]] = {}
        for point, partition in self.fibers.items():
            if point.curve != self.target:
                raise ValueError(
                    f"branch point {point.label} is not on the target curve"
                )
            part = tuple(sorted(partition, reverse=True))
            if not part or any(e < 1 for e in part):
                raise ValueError(f"invalid fiber partition {partition}")
            if sum(part) != self.degree:
                raise ValueError(
                    f"fiber over {point.label} sums to {sum(part)}, "
                    f"expected {self.degree}"
                )
            if part[0] == 1:
                raise ValueError(
                    f"fiber over {point.label} is unramified; drop it"
                )
            for e in part:
                _check_tame(e, self.target.characteristic, "ramification index")
            if self.galois:
                if len(set(part)) != 1:
                    raise ValueError(
                        f"galois cover has unequal indices over {point.label}"
                    )
                if self.degree % part[0] != 0:
                    raise ValueError(
                        f"galois index {part[0]} does not divide {self.degree}"
                    )
            normalized[point] = part
        labels = [p.label for p in normalized]
        if len(labels) != len(set(labels)):
            raise ValueError("duplicate branch point labels")
        object.__setattr__(self, "fibers", normalized)
        genus = expected_source_genus(
            self.target.genus, self.degree, list(normalized.values())
        )
        if genus != self.source.genus:
            raise ValueError(
                f"source genus {self.source.genus} contradicts the "
                f"ramification count (expected {genus})"
            )

    @property
    def branch_points(self) -> tuple[PointId, ...]:
        return tuple(sorted(self.fibers, key=lambda p: p.label))

    def fiber_over(self, point: PointId) -> tuple[int, ...]:
        """Index partition over ``point``; unlisted points are unramified."""
        if point.curve != self.target:
            raise ValueError(f"{point.label} is not on the target curve")
        return self.fibers.get(point, (1,) * self.degree)

    def preimages(self, point: PointId) -> tuple[tuple[PointId, int], ...]:
        """Named preimages of ``point`` with their ramification indices."""
        return tuple(
            (preimage_point(self.source, point, i), e)
            for i, e in enumerate(self.fiber_over(point))
        )


def identity_profile(curve: CurveTag) -> RamificationProfile:
    return RamificationProfile(curve, curve, 1, {}, galois=True)


def kummer_profile(
    m: int,
    characteristic: int = 0,
    target_name: str = "X",
    source_name: str = "Y",
    zero_label: str = "0",
    infinity_label: str = "inf",
) -> RamificationProfile:
    """The degree-``m`` cyclic cover of the genus-0 curve, totally ramified
    over two points."""
    if m < 1:
        raise ValueError("kummer degree must be positive")
    _check_tame(m, characteristic, "kummer degree")
    target = CurveTag(target_name, 0, characteristic)
    source = CurveTag(source_name, 0, characteristic)
    fibers = {}
    if m > 1:
        fibers = {
            target.point(zero_label): (m,),
            target.point(infinity_label): (m,),
        }
    return RamificationProfile(source, target, m, fibers, galois=True)


def riemann_hurwitz_genus(profile: RamificationProfile) -> int:
    """Genus of the total space of ``profile`` by the tame genus count."""
    return expected_source_genus(
        profile.target.genus, profile.degree, list(profile.fibers.values())
    )


def tame_order_after_pullback(n: int, e: int, characteristic: int = 0) -> int:
    """Order of the pulled-back branch datum at a preimage of index ``e``.

    The degree-``n`` cyclic extension composed with the degree-``e`` local
    extension has degree ``lcm(n, e)`` over the base, hence ``n / gcd(n, e)``
    over the degree-``e`` side.
    """
    if n < 1 or e < 1:
        raise ValueError("orders and indices must be positive")
    _check_tame(n, characteristic, "branch order")
    _check_tame(e, characteristic, "ramification index")
    return n // gcd(n, e)


def pullback_branch_data(
    profile: RamificationProfile, data: TameBranchData
) -> TameBranchData:
    """Pull branch data on the target back to the total space of a cover.

    The order at a preimage of index ``e`` over a point of order ``n`` is
    ``n / gcd(n, e)``; preimages where the cover absorbs the datum entirely
    drop out of the support.
    """
    if data.curve != profile.target:
        raise ValueError("branch data does not live on the target curve")
    characteristic = profile.target.characteristic
    orders: dict[PointId, int] = {}
    for point in data.support:
        n = data.order_at(point)
        for preimage, e in profile.preimages(point):
            pulled = tame_order_after_pullback(n, e, characteristic)
            if pulled > 1:
                orders[preimage] = pulled
    return TameBranchData(profile.source, orders)


def branch_data_of_cover(profile: RamificationProfile) -> TameBranchData:
    """Smallest branch data on the target that absorbs the cover.

    At each branch point this is the lcm of the fiber indices: tame local
    extensions are cyclic, so the compositum of their Galois closures has
    degree the lcm.  The support is exactly the branch locus.
    """
    characteristic = profile.target.characteristic
    orders: dict[PointId, int] = {}
    for point in profile.branch_points:
        order = lcm(*profile.fibers[point])
        _check_tame(order, characteristic, "branch order")
        orders[point] = order
    return TameBranchData(profile.target, orders)


def branch_data_leq(first: TameBranchData, second: TameBranchData) -> bool:
    """Tame containment of branch data: divisibility of orders pointwise."""
    if first.curve != second.curve:
        raise ValueError("cannot compare branch data on different curves")
    return all(
        second.order_at(point) % first.order_at(point) == 0
        for point in first.support
    )


def is_morphism(
    profile: RamificationProfile,
    source_data: TameBranchData,
    target_data: TameBranchData,
) -> bool:
    """Whether the cover defines a morphism of orbifold curves.

    True exactly when the source branch data dominates the pullback of
    the target branch data.
    """
    if source_data.curve != profile.source:
        raise ValueError("source branch data is not on the source curve")
    pulled = pullback_branch_data(profile, target_data)
    return branch_data_leq(pulled, source_data)


def is_etale_morphism(
    profile: RamificationProfile,
    source_data: TameBranchData,
    target_data: TameBranchData,
) -> bool:
    """Whether the morphism is etale: source data equals the pullback exactly."""
    if source_data.curve != profile.source:
        raise ValueError("source branch data is not on the source curve")
    return pullback_branch_data(profile, target_data) == source_data


def is_geometric_witness(
    profile: RamificationProfile, data: TameBranchData
) -> bool:
    """Whether a Galois cover witnesses the branch data as geometric.

    The cover with trivial branch data upstairs maps etale onto the
    orbifold exactly when every order divides every ramification index
    over its point.
    """
    if not profile.galois:
        raise ValueError("a geometric witness must be a galois cover")
    if data.curve != profile.target:
        raise ValueError("branch data does not live on the target curve")
    for point in data.support:
        n = data.order_at(point)
        if any(e % n != 0 for e in profile.fiber_over(point)):
            return False
    return True
