"""Seeded random generators for the property suites."""

from __future__ import annotations

from fractions import Fraction
from random import Random

from .bundles import OrbBundle
from .curves import (
    CurveTag,
    OrbifoldCurve,
    RamificationProfile,
    TameBranchData,
)
from .divisors import OrbDivisor, OrbLineClass
from .equivariant import CyclicCoverSpec, EqLineBundle
from .monodromy import MonodromyDatum, Perm, is_connected

_LABELS = ("p", "q", "r", "s", "t", "u")


def _coprime_choice(rng: Random, low: int, high: int, characteristic: int) -> int:
    while True:
        value = rng.randint(low, high)
        if characteristic == 0 or value % characteristic != 0:
            return value


def random_perm(rng: Random, degree: int) -> Perm:
    images = list(range(1, degree + 1))
    rng.shuffle(images)
    return Perm(tuple(images))


def _tame_perm(rng: Random, degree: int, characteristic: int) -> Perm:
    while True:
        perm = random_perm(rng, degree)
        if characteristic == 0:
            return perm
        if all(
            length % characteristic != 0 for length in perm.cycle_type()
        ):
            return perm


def random_monodromy(
    rng: Random,
    max_degree: int = 6,
    max_cycles: int = 3,
    genus_choices: tuple[int, ...] = (0, 0, 1),
    characteristic: int = 0,
) -> MonodromyDatum:
    """A valid monodromy datum; connectivity is not guaranteed."""
    for _ in range(200):
        degree = rng.randint(1, max_degree)
        genus = rng.choice(genus_choices)
        handles = tuple(
            (
                _tame_perm(rng, degree, characteristic),
                _tame_perm(rng, degree, characteristic),
            )
            for _ in range(genus)
        )
        n_cycles = rng.randint(0, max_cycles)
        prefix = []
        for _ in range(max(0, n_cycles - 1)):
            sigma = _tame_perm(rng, degree, characteristic)
            if not sigma.is_identity():
                prefix.append(sigma)
        product = Perm.identity(degree)
        for alpha, beta in handles:
            product = product * (
                alpha * beta * alpha.inverse() * beta.inverse()
            )
        for sigma in prefix:
            product = product * sigma
        cycles = list(prefix)
        closing = product.inverse()
        if n_cycles > 0 and not closing.is_identity():
            if characteristic and any(
                length % characteristic == 0
                for length in closing.cycle_type()
            ):
                continue
            cycles.append(closing)
        elif not product.is_identity():
            continue
        try:
            return MonodromyDatum(
                base_genus=genus,
                degree=degree,
                characteristic=characteristic,
                handles=handles,
                branch_cycles=tuple(
                    (f"b{i}", sigma) for i, sigma in enumerate(cycles)
                ),
            )
        except ValueError:
            continue
    raise RuntimeError("could not sample a monodromy datum")


def random_connected_monodromy(rng: Random, **kwargs) -> MonodromyDatum:
    for _ in range(500):
        datum = random_monodromy(rng, **kwargs)
        if is_connected(datum):
            return datum
    raise RuntimeError("could not sample a connected monodromy datum")


def random_profile(
    rng: Random,
    max_degree: int = 6,
    characteristic: int = 0,
) -> RamificationProfile:
    """A realizable cover skeleton, sampled through monodromy data."""
    from .monodromy import ramification_profile_of

    datum = random_connected_monodromy(
        rng, max_degree=max_degree, characteristic=characteristic
    )
    return ramification_profile_of(datum)


def random_branch_data(
    rng: Random,
    curve: CurveTag,
    points: tuple[str, ...] = _LABELS[:4],
    max_order: int = 12,
    allow_empty: bool = True,
) -> TameBranchData:
    orders = {}
    for label in points:
        if rng.random() < 0.5:
            order = _coprime_choice(rng, 2, max_order, curve.characteristic)
            orders[curve.point(label)] = order
    if not orders and not allow_empty:
        label = rng.choice(points)
        orders[curve.point(label)] = _coprime_choice(
            rng, 2, max_order, curve.characteristic
        )
    return TameBranchData(curve, orders)


def random_refinement(rng: Random, data: TameBranchData) -> TameBranchData:
    """Branch data dominating ``data``: orders scale, points may be added."""
    curve = data.curve
    orders = {}
    for point, order in data.orders.items():
        factor = _coprime_choice(rng, 1, 4, curve.characteristic)
        orders[point] = order * factor
    for label in _LABELS[4:]:
        if rng.random() < 0.3:
            orders[curve.point(label)] = _coprime_choice(
                rng, 2, 6, curve.characteristic
            )
    return TameBranchData(curve, orders)


def random_divisor(
    rng: Random,
    ambient: OrbifoldCurve,
    extra_points: tuple[str, ...] = ("w", "v"),
    max_coeff: int = 5,
) -> OrbDivisor:
    coefficients = {}
    for point in ambient.data.support:
        if rng.random() < 0.8:
            coefficients[point] = rng.randint(-max_coeff, max_coeff)
    for label in extra_points:
        if rng.random() < 0.4:
            coefficients[ambient.curve.point(label)] = rng.randint(
                -max_coeff, max_coeff
            )
    return OrbDivisor(ambient, coefficients)


def random_class(
    rng: Random, ambient: OrbifoldCurve, max_coarse: int = 4
) -> OrbLineClass:
    residues = {}
    weight = Fraction(0)
    for point in ambient.data.support:
        order = ambient.order_at(point)
        residue = rng.randrange(order)
        if residue:
            residues[point] = residue
            weight += Fraction(residue, order)
    coarse = rng.randint(-max_coarse, max_coarse)
    return OrbLineClass(ambient, residues, coarse + weight)


def random_bundle(
    rng: Random, ambient: OrbifoldCurve, max_rank: int = 4
) -> OrbBundle:
    rank = rng.randint(1, max_rank)
    return OrbBundle(
        ambient, tuple(random_class(rng, ambient) for _ in range(rank))
    )


def random_eq_line(
    rng: Random,
    spec: CyclicCoverSpec,
    canonical: bool = False,
    span: int = 6,
) -> EqLineBundle:
    """Random equivariant line bundle; canonical form lies in the image
    of the orbifold pullback (character 0, reduced coefficient at zero,
    no orbit coefficients)."""
    if canonical:
        return EqLineBundle(
            spec, rng.randrange(spec.m), rng.randint(-span, span), {}, 0
        )
    orbits = {}
    for label in ("1", "2"):
        if rng.random() < 0.4:
            orbits[spec.target_curve.point(label)] = rng.randint(-2, 2)
    return EqLineBundle(
        spec,
        rng.randint(-span, span),
        rng.randint(-span, span),
        orbits,
        rng.randrange(spec.m),
    )


def genus0_ambient(
    rng: Random, characteristic: int = 0, name: str = "X"
) -> OrbifoldCurve:
    curve = CurveTag(name, 0, characteristic)
    return OrbifoldCurve(curve, random_branch_data(rng, curve))
