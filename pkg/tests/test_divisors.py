"""Stacky divisor degrees, pullbacks, classes and section counts."""

from fractions import Fraction
from random import Random

import pytest

from orbicalc.curves import CurveTag, OrbifoldCurve, TameBranchData, kummer_profile
from orbicalc.divisors import (
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
from orbicalc.sampling import (
    genus0_ambient,
    random_branch_data,
    random_class,
    random_divisor,
    random_profile,
    random_refinement,
)

X = CurveTag("X", 0, 0)


def ambient_with(**orders) -> OrbifoldCurve:
    return OrbifoldCurve(
        X, TameBranchData(X, {X.point(k): v for k, v in orders.items()})
    )


def div(ambient, **coeffs) -> OrbDivisor:
    return OrbDivisor(
        ambient, {ambient.curve.point(k): v for k, v in coeffs.items()}
    )


class TestDegree:
    def test_zero(self):
        assert OrbDivisor.zero(ambient_with()).degree() == 0

    def test_third(self):
        ambient = ambient_with(x=3)
        assert div(ambient, x=1).degree() == Fraction(1, 3)

    def test_mixed(self):
        ambient = ambient_with(x=2)
        assert div(ambient, x=2, y=-1).degree() == 0

    def test_additive(self):
        rng = Random(0)
        for _ in range(200):
            ambient = genus0_ambient(rng)
            a = random_divisor(rng, ambient)
            b = random_divisor(rng, ambient)
            assert (a + b).degree() == a.degree() + b.degree()

    def test_point_off_curve_rejected(self):
        other = CurveTag("Z", 0, 0)
        with pytest.raises(ValueError):
            OrbDivisor(ambient_with(), {other.point("x"): 1})


class TestIotaPullback:
    def test_identity_refinement(self):
        ambient = ambient_with(x=2)
        d = div(ambient, x=1)
        assert iota_pullback(d, ambient.data) == d

    def test_multiplier(self):
        ambient = ambient_with(x=2)
        finer = TameBranchData(X, {X.point("x"): 6})
        moved = iota_pullback(div(ambient, x=1), finer)
        assert moved.coefficient(X.point("x")) == 3

    def test_degree_invariance(self):
        rng = Random(1)
        for _ in range(300):
            data = random_branch_data(rng, X)
            ambient = OrbifoldCurve(X, data)
            divisor = random_divisor(rng, ambient)
            finer = random_refinement(rng, data)
            assert iota_pullback(divisor, finer).degree() == divisor.degree()

    def test_order_violation(self):
        ambient = ambient_with(x=4)
        coarser = TameBranchData(X, {X.point("x"): 2})
        with pytest.raises(ValueError):
            iota_pullback(div(ambient, x=1), coarser)


class TestCoverPullback:
    def test_zero(self):
        f = kummer_profile(2)
        ambient = OrbifoldCurve(f.target, TameBranchData.trivial(f.target))
        assert cover_pullback(OrbDivisor.zero(ambient), f).degree() == 0

    def test_coprime_index_scales_coefficient(self):
        f = kummer_profile(3)
        ambient = OrbifoldCurve(
            f.target, TameBranchData(f.target, {f.target.point("0"): 2})
        )
        pulled = cover_pullback(div(ambient, **{"0": 1}), f)
        y = f.source.point("0.0")
        assert pulled.coefficient(y) == 3
        assert pulled.ambient.order_at(y) == 2

    def test_matching_index_drops_stackiness(self):
        f = kummer_profile(2)
        ambient = OrbifoldCurve(
            f.target, TameBranchData(f.target, {f.target.point("0"): 2})
        )
        d = div(ambient, **{"0": 1})
        assert d.degree() == Fraction(1, 2)
        pulled = cover_pullback(d, f)
        y = f.source.point("0.0")
        assert pulled.coefficient(y) == 1
        assert pulled.ambient.order_at(y) == 1
        assert pulled.degree() == 1

    def test_degree_multiplicativity(self):
        rng = Random(2)
        for _ in range(300):
            f = random_profile(rng)
            data = random_branch_data(rng, f.target)
            ambient = OrbifoldCurve(f.target, data)
            divisor = random_divisor(rng, ambient)
            assert cover_pullback(divisor, f).degree() == f.degree * divisor.degree()

    def test_curve_mismatch(self):
        f = kummer_profile(2)
        other = CurveTag("Z", 0, 0)
        ambient = OrbifoldCurve(other, TameBranchData.trivial(other))
        with pytest.raises(ValueError):
            cover_pullback(OrbDivisor(ambient, {other.point("p"): 1}), f)


class TestClassOf:
    def test_plain_shift_is_principal(self):
        ambient = ambient_with(s=2)
        d = div(ambient, s=1, a=2)
        shifted = d + div(ambient, a=1, b=-1)
        assert class_of(d) == class_of(shifted)

    def test_order_multiple_at_stacky_point_is_principal(self):
        ambient = ambient_with(s=2)
        first = div(ambient, s=1)
        second = div(ambient, s=3, p=-1)
        assert class_of(first) == class_of(second)
        assert class_of(first).residue_at(X.point("s")) == 1
        assert class_of(first).total_degree == Fraction(1, 2)

    def test_distinct_stacky_points_not_equivalent(self):
        ambient = ambient_with(s=2, t=2)
        assert class_of(div(ambient, s=1)) != class_of(div(ambient, t=1))

    def test_genus_zero_only(self):
        curve = CurveTag("E", 1, 0)
        ambient = OrbifoldCurve(curve, TameBranchData.trivial(curve))
        with pytest.raises(ValueError):
            class_of(OrbDivisor(ambient, {curve.point("p"): 1}))

    def test_matches_principal_difference_oracle(self):
        # Two divisors share a class exactly when their difference is an
        # integer combination of order-times-point terms summing to zero.
        rng = Random(3)
        for _ in range(300):
            ambient = genus0_ambient(rng)
            a = random_divisor(rng, ambient)
            b = random_divisor(rng, ambient)
            delta = a - b
            principal = True
            total = 0
            for point in delta.support:
                order = ambient.order_at(point)
                coeff = delta.coefficient(point)
                if coeff % order:
                    principal = False
                    break
                total += coeff // order
            principal = principal and total == 0
            assert (class_of(a) == class_of(b)) == principal


class TestClassArithmetic:
    def test_identity(self):
        ambient = ambient_with(s=2)
        line = class_of(div(ambient, s=1))
        assert line + OrbLineClass.trivial(ambient) == line

    def test_doubling_carries(self):
        ambient = ambient_with(s=2)
        line = class_of(div(ambient, s=1))
        doubled = line + line
        assert doubled.residues == {}
        assert doubled.total_degree == 1

    def test_negation(self):
        ambient = ambient_with(s=2)
        line = class_of(div(ambient, s=1))
        negated = -line
        assert negated.residue_at(X.point("s")) == 1
        assert negated.total_degree == Fraction(-1, 2)
        assert (line + negated).is_trivial()

    def test_matches_divisor_arithmetic(self):
        rng = Random(4)
        for _ in range(200):
            ambient = genus0_ambient(rng)
            a = random_divisor(rng, ambient)
            b = random_divisor(rng, ambient)
            assert class_of(a + b) == class_of(a) + class_of(b)
            assert class_of(-a) == -class_of(a)

    def test_invariant_enforced(self):
        ambient = ambient_with(s=2)
        with pytest.raises(ValueError):
            OrbLineClass(ambient, {X.point("s"): 1}, Fraction(0))
        with pytest.raises(ValueError):
            OrbLineClass(ambient, {X.point("s"): 2}, Fraction(1))


class TestFloorView:
    def test_trivial(self):
        assert OrbLineClass.trivial(ambient_with()).floor_view() == (0, {})

    def test_two_half_weights(self):
        ambient = ambient_with(**{"0": 2, "inf": 2})
        line = OrbLineClass(
            ambient,
            {X.point("0"): 1, X.point("inf"): 1},
            Fraction(0),
        )
        coarse, weights = line.floor_view()
        assert coarse == -1
        assert weights == {
            X.point("0"): Fraction(1, 2),
            X.point("inf"): Fraction(1, 2),
        }

    def test_third_weights(self):
        ambient = ambient_with(s=3)
        line = OrbLineClass(ambient, {X.point("s"): 2}, Fraction(5, 3))
        assert line.floor_view() == (1, {X.point("s"): Fraction(2, 3)})


class TestSections:
    def test_trivial_has_constants(self):
        assert h0(OrbLineClass.trivial(ambient_with())) == 1

    def test_degree_zero_with_weights_has_none(self):
        ambient = ambient_with(**{"0": 2, "inf": 2})
        line = OrbLineClass(
            ambient, {X.point("0"): 1, X.point("inf"): 1}, Fraction(0)
        )
        assert h0(line) == 0

    def test_full_period(self):
        ambient = ambient_with(s=2)
        assert h0(class_of(div(ambient, s=2))) == 2

    def test_monotone_in_degree(self):
        rng = Random(5)
        for _ in range(200):
            ambient = genus0_ambient(rng)
            line = random_class(rng, ambient)
            bumped = OrbLineClass(
                ambient, dict(line.residues), line.total_degree + 1
            )
            assert h0(bumped) >= h0(line)


class TestHom:
    def test_endomorphisms(self):
        rng = Random(6)
        for _ in range(100):
            line = random_class(rng, genus0_ambient(rng))
            assert hom_dim(line, line) == 1

    def test_half_weights_have_no_maps(self):
        ambient = ambient_with(**{"0": 2, "inf": 2})
        left = class_of(div(ambient, **{"0": 1}))
        right = class_of(div(ambient, **{"inf": 1}))
        assert hom_dim(left, right) == 0

    def test_plain_point_gives_two(self):
        ambient = ambient_with()
        assert hom_dim(
            OrbLineClass.trivial(ambient), class_of(div(ambient, p=1))
        ) == 2

    def test_nonzero_maps_do_not_decrease_degree(self):
        rng = Random(7)
        for _ in range(300):
            ambient = genus0_ambient(rng)
            a = random_class(rng, ambient)
            b = random_class(rng, ambient)
            if hom_dim(a, b) > 0:
                assert a.total_degree <= b.total_degree

    def test_ambient_mismatch(self):
        with pytest.raises(ValueError):
            hom_dim(
                OrbLineClass.trivial(ambient_with(s=2)),
                OrbLineClass.trivial(ambient_with(s=3)),
            )


class TestClassPullbacks:
    def test_iota_class_matches_divisor_route(self):
        rng = Random(8)
        for _ in range(200):
            data = random_branch_data(rng, X)
            ambient = OrbifoldCurve(X, data)
            divisor = random_divisor(rng, ambient)
            finer = random_refinement(rng, data)
            assert iota_pullback_class(class_of(divisor), finer) == class_of(
                iota_pullback(divisor, finer)
            )

    def test_cover_class_matches_divisor_route(self):
        rng = Random(9)
        checked = 0
        while checked < 150:
            f = random_profile(rng)
            if f.target.genus != 0 or f.source.genus != 0:
                continue
            data = random_branch_data(rng, f.target)
            ambient = OrbifoldCurve(f.target, data)
            divisor = random_divisor(rng, ambient)
            assert cover_pullback_class(class_of(divisor), f) == class_of(
                cover_pullback(divisor, f)
            )
            checked += 1

    def test_cover_class_well_defined_on_classes(self):
        rng = Random(10)
        checked = 0
        while checked < 100:
            f = random_profile(rng)
            if f.target.genus != 0 or f.source.genus != 0:
                continue
            data = random_branch_data(rng, f.target)
            ambient = OrbifoldCurve(f.target, data)
            a = random_divisor(rng, ambient)
            b = a + OrbDivisor(
                ambient,
                {ambient.curve.point("w1"): 1, ambient.curve.point("w2"): -1},
            )
            assert class_of(a) == class_of(b)
            assert cover_pullback_class(class_of(a), f) == cover_pullback_class(
                class_of(b), f
            )
            checked += 1
