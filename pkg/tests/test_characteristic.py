"""Positive-characteristic paths: tameness gating and exact arithmetic."""

from fractions import Fraction
from random import Random

import pytest

from orbicalc.curves import (
    CurveTag,
    OrbifoldCurve,
    RamificationProfile,
    TameBranchData,
    branch_data_of_cover,
    kummer_profile,
    pullback_branch_data,
    tame_order_after_pullback,
)
from orbicalc.divisors import OrbDivisor, class_of, cover_pullback, hom_dim
from orbicalc.equivariant import (
    CyclicCoverSpec,
    equivariant_pullback,
    hom_dim_equivariant,
    invariant_pushforward,
)
from orbicalc.monodromy import (
    MonodromyDatum,
    Perm,
    is_genuinely_ramified,
    kummer_datum,
    oracle_is_genuinely_ramified,
    ramification_profile_of,
)
from orbicalc.sampling import random_class


class TestTamenessGates:
    def test_branch_order_divisible_by_char_rejected(self):
        with pytest.raises(ValueError):
            tame_order_after_pullback(10, 3, characteristic=5)

    def test_kummer_degree_divisible_by_char_rejected(self):
        with pytest.raises(ValueError):
            kummer_profile(6, characteristic=3)

    def test_monodromy_cycle_length_divisible_by_char_rejected(self):
        sigma = Perm.from_cycles(3, [(1, 2, 3)])
        with pytest.raises(ValueError):
            MonodromyDatum(
                0, 3, 3, (),
                (("0", sigma), ("inf", sigma.inverse())),
            )

    def test_mixed_characteristics_rejected(self):
        X5 = CurveTag("X", 0, 5)
        Y7 = CurveTag("Y", 0, 7)
        with pytest.raises(ValueError):
            RamificationProfile(Y7, X5, 1, {})


class TestCalculusAtCharFive:
    X5 = CurveTag("X", 0, 5)

    def test_pullback_calculus(self):
        f = kummer_profile(3, characteristic=5)
        P = TameBranchData(
            f.target, {f.target.point("0"): 6, f.target.point("inf"): 2}
        )
        pulled = pullback_branch_data(f, P)
        assert pulled.order_at(f.source.point("0.0")) == 2
        assert pulled.order_at(f.source.point("inf.0")) == 2
        assert branch_data_of_cover(f).order_at(f.target.point("0")) == 3

    def test_monodromy_and_profile(self):
        datum = kummer_datum(4, characteristic=5)
        assert is_genuinely_ramified(datum)
        assert oracle_is_genuinely_ramified(datum)
        profile = ramification_profile_of(datum)
        assert profile.target.characteristic == 5
        assert profile.galois

    def test_degree_multiplicativity(self):
        f = kummer_profile(4, characteristic=5)
        ambient = OrbifoldCurve(
            f.target, TameBranchData(f.target, {f.target.point("0"): 2})
        )
        divisor = OrbDivisor(
            ambient, {f.target.point("0"): 3, f.target.point("q"): -1}
        )
        assert cover_pullback(divisor, f).degree() == 4 * divisor.degree()


class TestEquivariantAtCharFive:
    def test_round_trips_and_homs(self):
        rng = Random(0)
        spec = CyclicCoverSpec(4, characteristic=5)
        ambient = spec.target_orbifold()
        assert ambient.characteristic == 5
        for _ in range(200):
            line = random_class(rng, ambient)
            upstairs = equivariant_pullback(line, spec)
            assert invariant_pushforward(upstairs) == line
            assert upstairs.degree() == 4 * line.total_degree
            other = random_class(rng, ambient)
            assert hom_dim(line, other) == hom_dim_equivariant(
                upstairs, equivariant_pullback(other, spec)
            )

    def test_class_arithmetic(self):
        spec = CyclicCoverSpec(3, characteristic=7)
        ambient = spec.target_orbifold()
        line = class_of(OrbDivisor(ambient, {spec.zero: 2}))
        assert line.total_degree == Fraction(2, 3)
        assert (line + (-line)).is_trivial()
