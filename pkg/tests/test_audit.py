"""Audit cases: recomputed quantities and status tags."""

from fractions import Fraction

import pytest

from orbicalc.audit import (
    CONSISTENT,
    DISCREPANT,
    NOT_APPLICABLE,
    AuditCase,
    builtin_case,
    run_audit,
)


class TestHalfWeights:
    def report(self):
        return run_audit(builtin_case("kummer2-halfweights"))

    def test_hypotheses(self):
        r = self.report()
        assert r.hypotheses["connected"]
        assert r.hypotheses["galois"]
        assert r.hypotheses["genuinely_ramified"]
        assert r.hypotheses["max_etale_degree"] == 1

    def test_hom_triple(self):
        q = self.report().quantities
        assert q["hom_base"] == 0
        assert q["hom_upstairs_equivariant"] == 0
        assert q["hom_upstairs_plain"] == 1

    def test_pushforward_degrees(self):
        q = self.report().quantities
        assert q["pushforward_degrees_stacky"] == [Fraction(0), Fraction(0)]
        assert q["pushforward_degrees_coarse"] == [0, -1]

    def test_two_readings_disagree(self):
        s = self.report().statuses
        assert s["hom_match_equivariant"] == CONSISTENT
        assert s["hom_match_plain"] == DISCREPANT
        assert s["negative_quotient_degree_stacky"] == DISCREPANT
        assert s["negative_quotient_degree_coarse"] == CONSISTENT
        assert s["slope_ceiling_stacky"] == DISCREPANT
        assert s["slope_ceiling_coarse"] == CONSISTENT

    def test_converse_not_applicable(self):
        assert self.report().statuses["unstable_pullback_exists"] == NOT_APPLICABLE


class TestTrivialData:
    def report(self):
        return run_audit(builtin_case("kummer2-trivialP"))

    def test_quotient_degree_negative_in_coarse_reading(self):
        q = self.report().quantities
        assert q["pushforward_degrees_coarse"] == [0, -1]
        assert q["pushforward_degrees_coarse"][1] == -1 < 0

    def test_negative_degree_status(self):
        assert (
            self.report().statuses["negative_quotient_degree_coarse"]
            == CONSISTENT
        )

    def test_homs_all_one_for_trivial_objects(self):
        q = self.report().quantities
        assert q["hom_base"] == q["hom_upstairs_equivariant"] == 1
        assert q["hom_upstairs_plain"] == 1


class TestEqualObjects:
    def test_all_three_homs_one(self):
        q = run_audit(builtin_case("kummer2-equal")).quantities
        assert q["hom_base"] == 1
        assert q["hom_upstairs_equivariant"] == 1
        assert q["hom_upstairs_plain"] == 1

    def test_hom_statuses_consistent(self):
        s = run_audit(builtin_case("kummer2-equal")).statuses
        assert s["hom_match_equivariant"] == CONSISTENT
        assert s["hom_match_plain"] == CONSISTENT


class TestThirds:
    def test_same_pattern_at_degree_three(self):
        r = run_audit(builtin_case("kummer3-thirds"))
        q = r.quantities
        assert q["deg_left"] == q["deg_right"] == Fraction(1, 3)
        assert q["hom_base"] == 0
        assert q["hom_upstairs_equivariant"] == 0
        assert q["hom_upstairs_plain"] == 1
        assert len(q["pushforward_degrees_stacky"]) == 3


class TestCaseValidation:
    def test_unknown_builtin(self):
        with pytest.raises(ValueError):
            builtin_case("nope")

    def test_orders_must_divide_cover_degree(self):
        with pytest.raises(ValueError):
            AuditCase("bad", m=2, orders={"0": 3})

    def test_orders_only_at_branch_points(self):
        with pytest.raises(ValueError):
            AuditCase("bad", m=2, orders={"q": 2})

    def test_unequal_slopes_make_hom_statuses_not_applicable(self):
        case = AuditCase(
            "skew", m=2, orders={"0": 2}, left={"0": 1}, right={}
        )
        r = run_audit(case)
        assert r.statuses["hom_match_equivariant"] == NOT_APPLICABLE
        assert r.statuses["hom_match_plain"] == NOT_APPLICABLE
