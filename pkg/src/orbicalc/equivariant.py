"""Cyclic equivariant line bundles on the projective line.

Setting: the group of m-th roots of unity acts on the z-line by
``z -> zeta z``; the quotient map is the degree-m cyclic cover
``w = z^m``, totally ramified over ``w = 0`` and ``w = inf``.  The
matching orbifold base is the genus-0 curve with branch orders m at
those two points.

An equivariant line bundle is recorded as a divisor ``a.[0] + b.[inf] +
sum k_q . (orbit over q)`` together with a character ``c``: the group
acts on rational sections by

    (gamma . s)(z) = zeta^c * s(zeta^{-1} z),

the natural action twisted by ``zeta^c``.  Under this convention the
monomial ``z^j`` is invariant exactly when ``j = c (mod m)``, and
multiplication by ``z`` gives an equivariant isomorphism

    (a, b, c)  ~  (a - 1, b + 1, c + 1),

while multiplying by the invariant function ``z^m - q`` folds an orbit
coefficient ``k`` into ``b + m k`` without touching ``a`` or ``c``.  The
isomorphism class is therefore pinned by the total degree together with
``(a + c) mod m``.

The correspondence with orbifold line classes downstairs:

* pullback of a class with residues ``(r0, rinf)`` and coarse floor
  degree ``k`` is ``(a, b, c) = (r0, rinf + m k, 0)`` -- the natural
  linearization, with the coarse part folded into the infinity
  coefficient;
* the invariant pushforward inverts this on every bundle: residues
  ``((a + c) mod m, (b + m.sum(k) - c) mod m)`` and degree
  ``(total degree) / m``.

These closed forms are forced by the requirement that invariant-monomial
counts upstairs reproduce the coarse-floor section counts downstairs for
all twists; the property suites check that contract exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .curves import (
    CurveTag,
    OrbifoldCurve,
    PointId,
    RamificationProfile,
    TameBranchData,
    _check_tame,
    kummer_profile,
)
from .divisors import OrbLineClass


@dataclass(frozen=True)
class CyclicCoverSpec:
    """The degree-m cyclic cover of the genus-0 curve and its orbifold base."""

    m: int
    characteristic: int = 0
    zero_label: str = "0"
    infinity_label: str = "inf"

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ValueError("cyclic cover degree must be >= 2")
        _check_tame(self.m, self.characteristic, "cyclic cover degree")

    @property
    def target_curve(self) -> CurveTag:
        return CurveTag("X", 0, self.characteristic)

    @property
    def source_curve(self) -> CurveTag:
        return CurveTag("Y", 0, self.characteristic)

    @property
    def zero(self) -> PointId:
        return self.target_curve.point(self.zero_label)

    @property
    def infinity(self) -> PointId:
        return self.target_curve.point(self.infinity_label)

    def target_orbifold(self) -> OrbifoldCurve:
        data = TameBranchData(
            self.target_curve, {self.zero: self.m, self.infinity: self.m}
        )
        return OrbifoldCurve(self.target_curve, data)

    def profile(self) -> RamificationProfile:
        return kummer_profile(
            self.m,
            self.characteristic,
            zero_label=self.zero_label,
            infinity_label=self.infinity_label,
        )

    def trivial_class(self) -> OrbLineClass:
        return OrbLineClass.trivial(self.target_orbifold())


@dataclass(frozen=True)
class EqLineBundle:
    """Equivariant line bundle for a cyclic cover, as divisor data plus character.

    ``a`` and ``b`` are the coefficients at the two fixed points, the
    orbit coefficients apply to whole free fibers (m points each), and
    the character twists the natural action on sections.
    """

    spec: CyclicCoverSpec
    a: int = 0
    b: int = 0
    orbit_coeffs: Mapping[PointId, int] = field(default_factory=dict)
    character: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.character < self.spec.m:
            raise ValueError(
                f"character must be reduced mod {self.spec.m}, "
                f"got {self.character}"
            )
        cleaned: dict[PointId, int] = {}
        for point, coeff in self.orbit_coeffs.items():
            if point.curve != self.spec.target_curve:
                raise ValueError("orbit points are labelled by target points")
            if point in (self.spec.zero, self.spec.infinity):
                raise ValueError(
                    f"{point.label} is a branch point, not a free orbit"
                )
            if coeff:
                cleaned[point] = coeff
        object.__setattr__(self, "orbit_coeffs", cleaned)

    @classmethod
    def trivial(cls, spec: CyclicCoverSpec) -> "EqLineBundle":
        return cls(spec)

    def degree(self) -> int:
        """Degree of the underlying line bundle; each orbit has m points."""
        return self.a + self.b + self.spec.m * sum(self.orbit_coeffs.values())

    def reduced(self) -> "EqLineBundle":
        """Fold orbit coefficients into the infinity coefficient.

        Multiplication by powers of ``z^m - q`` is equivariant and
        exchanges an orbit for m times the infinity point.
        """
        if not self.orbit_coeffs:
            return self
        folded = self.b + self.spec.m * sum(self.orbit_coeffs.values())
        return EqLineBundle(self.spec, self.a, folded, {}, self.character)

    def tensor(self, other: "EqLineBundle") -> "EqLineBundle":
        if other.spec != self.spec:
            raise ValueError("equivariant bundles over different covers")
        orbits = dict(self.orbit_coeffs)
        for point, coeff in other.orbit_coeffs.items():
            orbits[point] = orbits.get(point, 0) + coeff
        return EqLineBundle(
            self.spec,
            self.a + other.a,
            self.b + other.b,
            orbits,
            (self.character + other.character) % self.spec.m,
        )

    def dual(self) -> "EqLineBundle":
        return EqLineBundle(
            self.spec,
            -self.a,
            -self.b,
            {p: -c for p, c in self.orbit_coeffs.items()},
            (-self.character) % self.spec.m,
        )

    def twist(self, shift: int) -> "EqLineBundle":
        """Tensor with the character-``shift`` twist of the trivial bundle."""
        return EqLineBundle(
            self.spec,
            self.a,
            self.b,
            dict(self.orbit_coeffs),
            (self.character + shift) % self.spec.m,
        )

    def iso_invariants(self) -> tuple[int, int]:
        """Complete isomorphism invariant: (degree, (a + character) mod m)."""
        return self.degree(), (self.a + self.character) % self.spec.m


@dataclass(frozen=True)
class EqBundle:
    """Direct sum of equivariant line bundles over one cyclic cover."""

    summands: tuple[EqLineBundle, ...]

    def __post_init__(self) -> None:
        if not self.summands:
            raise ValueError("a bundle needs at least one summand")
        spec = self.summands[0].spec
        if any(s.spec != spec for s in self.summands):
            raise ValueError("summands over different covers")

    @property
    def spec(self) -> CyclicCoverSpec:
        return self.summands[0].spec

    def rank(self) -> int:
        return len(self.summands)

    def degree(self) -> int:
        return sum(s.degree() for s in self.summands)

    def slope(self) -> Fraction:
        return Fraction(self.degree(), self.rank())

    def is_semistable(self) -> bool:
        return len({s.degree() for s in self.summands}) == 1

    def is_polystable(self) -> bool:
        return self.is_semistable()

    def is_stable(self) -> bool:
        return self.rank() == 1


def h0_invariants(bundle: EqLineBundle) -> int:
    """Number of invariant sections, by counting eigen-monomials.

    After folding orbits, sections are spanned by ``z^j`` for
    ``-a <= j <= b`` and the invariant ones satisfy ``j = c (mod m)``.
    """
    reduced = bundle.reduced()
    m = bundle.spec.m
    lo, hi, c = -reduced.a, reduced.b, reduced.character
    count = (hi - c) // m - (lo - c + m - 1) // m + 1
    return max(0, count)


def hom_dim_plain(first: EqLineBundle, second: EqLineBundle) -> int:
    """Maps of the underlying line bundles, the group action disregarded."""
    if first.spec != second.spec:
        raise ValueError("equivariant bundles over different covers")
    return max(0, second.degree() - first.degree() + 1)


def hom_dim_equivariant(first: EqLineBundle, second: EqLineBundle) -> int:
    """Equivariant maps: invariant sections of the hom bundle."""
    if first.spec != second.spec:
        raise ValueError("equivariant bundles over different covers")
    return h0_invariants(second.tensor(first.dual()))


def equivariant_pullback(
    line_class: OrbLineClass, spec: CyclicCoverSpec
) -> EqLineBundle:
    """Pull an orbifold line class back to the cyclic cover.

    The residues become the coefficients at the fixed points (the local
    pullback multiplier is 1 for a totally ramified tame point), the
    coarse floor degree folds into the infinity coefficient, and the
    natural linearization carries character 0.  The degree upstairs is m
    times the stacky degree downstairs.
    """
    if line_class.ambient != spec.target_orbifold():
        raise ValueError(
            "class must live on the orbifold base of the cyclic cover"
        )
    r0 = line_class.residue_at(spec.zero)
    rinf = line_class.residue_at(spec.infinity)
    coarse, _ = line_class.floor_view()
    return EqLineBundle(spec, r0, rinf + spec.m * coarse, {}, 0)


def invariant_pushforward(bundle: EqLineBundle) -> OrbLineClass:
    """Push an equivariant line bundle down to an orbifold line class.

    Inverse of the pullback on its image and defined on every bundle:
    residues ``((a + c) mod m, (b + m.sum(orbits) - c) mod m)``, degree
    ``degree / m``.  This is the unique class whose twisted section
    counts downstairs match the invariant-monomial counts upstairs.
    """
    spec = bundle.spec
    reduced = bundle.reduced()
    m = spec.m
    r0 = (reduced.a + reduced.character) % m
    rinf = (reduced.b - reduced.character) % m
    residues = {}
    if r0:
        residues[spec.zero] = r0
    if rinf:
        residues[spec.infinity] = rinf
    return OrbLineClass(
        spec.target_orbifold(), residues, Fraction(bundle.degree(), m)
    )


def pushforward_structure(spec: CyclicCoverSpec) -> list[OrbLineClass]:
    """Character pieces of the pushforward of the structure sheaf.

    Entry ``c`` is the invariant pushforward of the trivial bundle
    twisted by the character ``c``; the ``c = 0`` entry is the trivial
    class.
    """
    return [
        invariant_pushforward(EqLineBundle(spec, 0, 0, {}, c))
        for c in range(spec.m)
    ]
