"""Property suites over randomized and exhaustive inputs.

Each suite returns a result with the number of cases run and the list of
failure messages (empty when everything holds).  ``run_all`` drives every
suite at a given percentage scale of the baseline case counts; scale 0
runs zero cases everywhere and succeeds trivially.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import gcd, lcm
from random import Random

from . import audit as audit_mod
from .bundles import OrbBundle, iota_pullback_bundle, pullback_bundle
from .curves import (
    CurveTag,
    OrbifoldCurve,
    branch_data_leq,
    branch_data_of_cover,
    is_etale_morphism,
    pullback_branch_data,
    riemann_hurwitz_genus,
    tame_order_after_pullback,
)
from .divisors import (
    OrbDivisor,
    class_of,
    cover_pullback,
    h0,
    hom_dim,
    iota_pullback,
)
from .equivariant import (
    CyclicCoverSpec,
    EqBundle,
    equivariant_pullback,
    hom_dim_equivariant,
    hom_dim_plain,
    invariant_pushforward,
    pushforward_structure,
)
from .monodromy import (
    MonodromyDatum,
    Perm,
    is_connected,
    is_galois,
    is_genuinely_ramified,
    kummer_datum,
    max_etale_subcover,
    normal_closure_orbits,
    oracle_is_genuinely_ramified,
    ramification_profile_of,
)
from .sampling import (
    genus0_ambient,
    random_branch_data,
    random_bundle,
    random_class,
    random_connected_monodromy,
    random_divisor,
    random_eq_line,
    random_profile,
    random_refinement,
)

MAX_REPORTED_FAILURES = 10


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failed: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def check(self, condition: bool, message: str) -> None:
        self.cases += 1
        if not condition:
            self.failed += 1
            if len(self.failures) < MAX_REPORTED_FAILURES:
                self.failures.append(message)


def _scaled(count: int, scale: int) -> int:
    return (count * scale) // 100


def suite_branch_calculus(rng: Random, scale: int) -> SuiteResult:
    result = SuiteResult("branch_calculus")
    for _ in range(_scaled(400, scale)):
        n = rng.randint(1, 30)
        e = rng.randint(1, 30)
        pulled = tame_order_after_pullback(n, e)
        result.check(n % pulled == 0, f"{pulled} does not divide {n}")
        result.check(
            pulled == lcm(n, e) // e,
            f"compositum degree mismatch for {(n, e)}",
        )
        result.check(
            (pulled == 1) == (e % n == 0),
            f"absorption criterion failed for {(n, e)}",
        )
    for _ in range(_scaled(200, scale)):
        profile = random_profile(rng)
        target = profile.target
        small = random_branch_data(rng, target)
        finer = random_refinement(rng, small)
        lhs = pullback_branch_data(profile, small)
        rhs = pullback_branch_data(profile, finer)
        result.check(
            branch_data_leq(lhs, rhs),
            f"pullback not monotone for {profile} and {small} <= {finer}",
        )
        # Pullback of the cover's own branch data matches the closed form.
        own = branch_data_of_cover(profile)
        pulled = pullback_branch_data(profile, own)
        for point in profile.branch_points:
            full = lcm(*profile.fibers[point])
            for preimage, e in profile.preimages(point):
                expected = full // gcd(full, e)
                result.check(
                    pulled.order_at(preimage) == expected,
                    f"closed form failed at {preimage.label}",
                )
        # The canonical factorization through the pulled-back data is etale.
        any_data = random_branch_data(rng, target)
        result.check(
            is_etale_morphism(
                profile, pullback_branch_data(profile, any_data), any_data
            ),
            "canonical factorization is not etale",
        )
    curve = CurveTag("X", 0, 0)
    for _ in range(_scaled(300, scale)):
        a = random_branch_data(rng, curve)
        b = random_branch_data(rng, curve)
        c = random_branch_data(rng, curve)
        result.check(branch_data_leq(a, a), "reflexivity failed")
        if branch_data_leq(a, b) and branch_data_leq(b, a):
            result.check(a == b, f"antisymmetry failed for {a}, {b}")
        if branch_data_leq(a, b) and branch_data_leq(b, c):
            result.check(branch_data_leq(a, c), "transitivity failed")
    return result


def suite_monodromy_structure(rng: Random, scale: int) -> SuiteResult:
    result = SuiteResult("monodromy_structure")
    for _ in range(_scaled(300, scale)):
        datum = random_connected_monodromy(rng)
        orbits = normal_closure_orbits(datum)
        sizes = {len(orbit) for orbit in orbits}
        result.check(
            len(sizes) == 1 and len(orbits) * sizes.pop() == datum.degree,
            f"orbits are not equal-size blocks for {datum}",
        )
        degree, block = max_etale_subcover(datum)
        result.check(
            degree == len(orbits), "max etale degree is not the orbit count"
        )
        result.check(
            (degree == 1) == is_genuinely_ramified(datum),
            "degree-1 verdict disagrees with genuine ramification",
        )
        result.check(
            (degree == datum.degree) == (not datum.branch_cycles),
            "full-degree verdict disagrees with etaleness",
        )
        result.check(
            not block.branch_cycles, "block datum carries branch cycles"
        )
        profile = ramification_profile_of(datum)
        result.check(
            riemann_hurwitz_genus(profile) == profile.source.genus,
            "profile genus count inconsistent",
        )
        if is_galois(datum):
            for label, sigma in datum.branch_cycles:
                result.check(
                    len(set(sigma.cycle_type())) == 1,
                    f"galois datum has unequal cycle lengths at {label!r}",
                )
    for m in range(2, 13) if scale > 0 else ():
        datum = kummer_datum(m)
        result.check(is_connected(datum), f"kummer {m} disconnected")
        result.check(is_galois(datum), f"kummer {m} not galois")
        result.check(
            is_genuinely_ramified(datum), f"kummer {m} not genuinely ramified"
        )
        result.check(
            max_etale_subcover(datum)[0] == 1,
            f"kummer {m} has a nontrivial etale subcover",
        )
        result.check(
            ramification_profile_of(datum).source.genus == 0,
            f"kummer {m} genus is not 0",
        )
    return result


def _exhaustive_data(degree: int, max_cycles: int):
    """All connected genus-0 data of the given degree with at most
    ``max_cycles`` branch cycles.  One cycle alone cannot satisfy the
    product relation, and zero cycles force degree 1."""
    if degree == 1:
        yield MonodromyDatum(0, 1, 0, (), ())
        return
    perms = [Perm(images) for images in permutations(range(1, degree + 1))]
    nontrivial = [p for p in perms if not p.is_identity()]
    for first in nontrivial:
        inverse = first.inverse()
        if max_cycles >= 2:
            datum = MonodromyDatum(
                0, degree, 0, (), (("b0", first), ("b1", inverse))
            )
            if is_connected(datum):
                yield datum
        if max_cycles >= 3:
            for second in nontrivial:
                closing = (first * second).inverse()
                if closing.is_identity():
                    continue
                datum = MonodromyDatum(
                    0,
                    degree,
                    0,
                    (),
                    (("b0", first), ("b1", second), ("b2", closing)),
                )
                if is_connected(datum):
                    yield datum


def suite_genuine_vs_oracle(rng: Random, scale: int) -> SuiteResult:
    result = SuiteResult("genuine_vs_oracle")
    if scale > 0:
        top_degree = 5 if scale >= 100 else 4
        for degree in range(1, top_degree + 1):
            for datum in _exhaustive_data(degree, 3):
                result.check(
                    is_genuinely_ramified(datum)
                    == oracle_is_genuinely_ramified(datum),
                    f"decider and oracle disagree on {datum}",
                )
    for _ in range(_scaled(500, scale)):
        datum = random_connected_monodromy(rng, max_degree=8, max_cycles=4)
        result.check(
            is_genuinely_ramified(datum)
            == oracle_is_genuinely_ramified(datum),
            f"decider and oracle disagree on {datum}",
        )
    return result


def suite_degree_multiplicativity(rng: Random, scale: int) -> SuiteResult:
    result = SuiteResult("degree_multiplicativity")
    for _ in range(_scaled(1000, scale)):
        profile = random_profile(rng)
        data = random_branch_data(rng, profile.target)
        ambient = OrbifoldCurve(profile.target, data)
        divisor = random_divisor(rng, ambient)
        pulled = cover_pullback(divisor, profile)
        result.check(
            pulled.degree() == profile.degree * divisor.degree(),
            f"degree not multiplied by {profile.degree} for {divisor}",
        )
    return result


def suite_iota_invariance(rng: Random, scale: int) -> SuiteResult:
    result = SuiteResult("iota_invariance")
    curve = CurveTag("X", 0, 0)
    for _ in range(_scaled(1000, scale)):
        data = random_branch_data(rng, curve)
        finer = random_refinement(rng, data)
        ambient = OrbifoldCurve(curve, data)
        divisor = random_divisor(rng, ambient)
        moved = iota_pullback(divisor, finer)
        result.check(
            moved.degree() == divisor.degree(),
            f"refinement changed the degree of {divisor}",
        )
    return result


def _principal_difference(first: OrbDivisor, second: OrbDivisor) -> bool:
    """Whether the difference is a combination of ``order * point`` terms
    with coefficients summing to zero.

    Divisors form a free group, so the candidate coefficient at each
    point is pinned by divisibility and no search is needed.
    """
    ambient = first.ambient
    delta = first - second
    ratios = []
    for point in delta.support:
        order = ambient.order_at(point)
        coeff = delta.coefficient(point)
        if coeff % order != 0:
            return False
        ratios.append(coeff // order)
    return sum(ratios) == 0


def suite_class_arithmetic(rng: Random, scale: int) -> SuiteResult:
    result = SuiteResult("class_arithmetic")
    for _ in range(_scaled(300, scale)):
        ambient = genus0_ambient(rng)
        a = random_divisor(rng, ambient)
        b = random_divisor(rng, ambient)
        result.check(
            (a + b).degree() == a.degree() + b.degree(),
            "divisor degree is not additive",
        )
        ca, cb = class_of(a), class_of(b)
        result.check(
            class_of(a + b) == ca + cb, "class arithmetic mismatch"
        )
        result.check(
            (ca + (-ca)).is_trivial(), "class and its negative do not cancel"
        )
        result.check(
            (class_of(a) == class_of(b)) == _principal_difference(a, b),
            "class equality disagrees with the principal-difference test",
        )
        # A constructed principal shift never changes the class.
        points = sorted(
            set(a.support) | set(ambient.data.support)
            | {ambient.curve.point("spare")},
            key=lambda p: p.label,
        )
        shift_points = rng.sample(points, k=min(len(points), 3))
        shift = {}
        running = 0
        for point in shift_points[:-1]:
            c = rng.randint(-2, 2)
            running += c
            shift[point] = c * ambient.order_at(point)
        last = shift_points[-1]
        shift[last] = shift.get(last, 0) - running * ambient.order_at(last)
        shifted = a + OrbDivisor(ambient, shift)
        result.check(
            class_of(shifted) == class_of(a),
            "principal shift changed the class",
        )
        result.check(
            _principal_difference(shifted, a),
            "principal shift not recognized as principal",
        )
    for _ in range(_scaled(200, scale)):
        ambient = genus0_ambient(rng)
        line = random_class(rng, ambient)
        bumped = type(line)(ambient, dict(line.residues), line.total_degree + 1)
        result.check(
            h0(bumped) >= h0(line), "sections not monotone in the degree"
        )
        other = random_class(rng, ambient)
        if hom_dim(line, other) > 0:
            result.check(
                line.total_degree <= other.total_degree,
                "nonzero map decreases the degree",
            )
        coarse, weights = line.floor_view()
        result.check(
            coarse + sum(weights.values(), Fraction(0)) == line.total_degree,
            "floor view does not resum to the degree",
        )
    return result


def suite_bundle_filtration(rng: Random, scale: int) -> SuiteResult:
    result = SuiteResult("bundle_filtration")
    for _ in range(_scaled(1000, scale)):
        ambient = genus0_ambient(rng)
        bundle = random_bundle(rng, ambient)
        report = bundle.hn()
        slopes = report.slopes
        result.check(
            all(b < a for a, b in zip(slopes, slopes[1:])),
            "filtration slopes not strictly decreasing",
        )
        covered = sorted(i for s in report.strata for i in s.indices)
        result.check(
            covered == list(range(bundle.rank())),
            "strata do not partition the summands",
        )
        for stratum in report.strata:
            piece = OrbBundle(
                ambient, tuple(bundle.summands[i] for i in stratum.indices)
            )
            result.check(piece.is_semistable(), "stratum not semistable")
            result.check(
                piece.slope() == stratum.slope, "stratum slope mismatch"
            )
        result.check(
            bundle.is_semistable() == (bundle.slope() == bundle.mu_max()),
            "semistability differs from slope = top slope",
        )
        twist = random_class(rng, ambient)
        twisted = bundle.tensor_line(twist)
        result.check(
            twisted.is_semistable() == bundle.is_semistable(),
            "twisting changed the semistability verdict",
        )
        result.check(
            twisted.mu_max() == bundle.mu_max() + twist.total_degree,
            "twisting shifted the top slope wrongly",
        )
        finer = random_refinement(rng, ambient.data)
        moved = iota_pullback_bundle(bundle, finer)
        result.check(
            moved.is_semistable() == bundle.is_semistable()
            and moved.is_polystable() == bundle.is_polystable()
            and moved.is_stable() == bundle.is_stable(),
            "refinement changed a stability verdict",
        )
    for _ in range(_scaled(200, scale)):
        profile = random_profile(rng)
        if profile.target.genus != 0 or profile.source.genus != 0:
            continue
        data = random_branch_data(rng, profile.target)
        ambient = OrbifoldCurve(profile.target, data)
        bundle = random_bundle(rng, ambient)
        source_data = random_refinement(
            rng, pullback_branch_data(profile, data)
        )
        pulled = pullback_bundle(bundle, profile, source_data)
        result.check(
            pulled.slope() == profile.degree * bundle.slope(),
            "pullback slope is not multiplied by the degree",
        )
        result.check(
            pulled.is_semistable() == bundle.is_semistable(),
            "pullback changed the semistability verdict",
        )
        if bundle.rank() == 1:
            result.check(pulled.is_stable(), "rank-1 pullback not stable")
    return result


def suite_parabolic_identity(rng: Random, scale: int) -> SuiteResult:
    result = SuiteResult("parabolic_identity")
    for _ in range(_scaled(1000, scale)):
        ambient = genus0_ambient(rng)
        line = random_class(rng, ambient)
        coarse, weights = line.floor_view()
        result.check(
            coarse + sum(weights.values(), Fraction(0)) == line.total_degree,
            "weights plus floor do not give the stacky degree",
        )
        bundle = random_bundle(rng, ambient)
        result.check(
            bundle.parabolic_slope() == bundle.slope(),
            "parabolic slope differs from stacky slope",
        )
    return result


def suite_equivariant_equivalence(rng: Random, scale: int) -> SuiteResult:
    result = SuiteResult("equivariant_equivalence")
    for m in (2, 3, 4, 6, 12):
        spec = CyclicCoverSpec(m)
        ambient = spec.target_orbifold()
        for _ in range(_scaled(500, scale)):
            line = random_class(rng, ambient)
            upstairs = equivariant_pullback(line, spec)
            result.check(
                invariant_pushforward(upstairs) == line,
                f"pushforward does not invert pullback at m={m}",
            )
            result.check(
                upstairs.degree() == m * line.total_degree,
                f"degree relation fails at m={m}",
            )
            canonical = random_eq_line(rng, spec, canonical=True)
            result.check(
                equivariant_pullback(invariant_pushforward(canonical), spec)
                == canonical,
                f"pullback does not invert pushforward at m={m}",
            )
            general = random_eq_line(rng, spec)
            image = equivariant_pullback(
                invariant_pushforward(general), spec
            )
            result.check(
                image.iso_invariants() == general.iso_invariants(),
                f"round trip changes the isomorphism class at m={m}",
            )
            other = random_class(rng, ambient)
            both = OrbBundle(ambient, (line, other))
            upstairs_bundle = EqBundle(
                (upstairs, equivariant_pullback(other, spec))
            )
            result.check(
                both.is_semistable() == upstairs_bundle.is_semistable()
                and both.is_polystable() == upstairs_bundle.is_polystable(),
                f"stability verdicts differ across the cover at m={m}",
            )
    return result


def suite_hom_equivalence(rng: Random, scale: int) -> SuiteResult:
    result = SuiteResult("hom_equivalence")
    for m in (2, 3, 4, 6, 12):
        spec = CyclicCoverSpec(m)
        ambient = spec.target_orbifold()
        for _ in range(_scaled(500, scale)):
            left = random_class(rng, ambient)
            right = random_class(rng, ambient)
            downstairs = hom_dim(left, right)
            upstairs = hom_dim_equivariant(
                equivariant_pullback(left, spec),
                equivariant_pullback(right, spec),
            )
            result.check(
                downstairs == upstairs,
                f"hom dimensions differ at m={m}: {downstairs} vs {upstairs}",
            )
    return result


def suite_adjunction(rng: Random, scale: int) -> SuiteResult:
    result = SuiteResult("adjunction")
    for m in (2, 3, 4):
        spec = CyclicCoverSpec(m)
        ambient = spec.target_orbifold()
        pieces = pushforward_structure(spec)
        for _ in range(_scaled(200, scale)):
            left = random_class(rng, ambient)
            right = random_class(rng, ambient)
            total = sum(
                hom_dim(left, right + piece) for piece in pieces
            )
            plain = hom_dim_plain(
                equivariant_pullback(left, spec),
                equivariant_pullback(right, spec),
            )
            result.check(
                total == plain,
                f"projection-formula count fails at m={m}: {total} vs {plain}",
            )
    return result


def suite_audit_reproducibility(rng: Random, scale: int) -> SuiteResult:
    result = SuiteResult("audit_reproducibility")
    if scale <= 0:
        return result
    report = audit_mod.run_audit(audit_mod.builtin_case("kummer2-halfweights"))
    q = report.quantities
    result.check(q["hom_base"] == 0, "half-weights base hom is not 0")
    result.check(
        q["hom_upstairs_equivariant"] == 0,
        "half-weights equivariant hom is not 0",
    )
    result.check(
        q["hom_upstairs_plain"] == 1, "half-weights plain hom is not 1"
    )
    result.check(
        q["pushforward_degrees_stacky"] == [Fraction(0), Fraction(0)],
        "half-weights stacky pushforward degrees are not [0, 0]",
    )
    result.check(
        report.statuses["hom_match_equivariant"] == audit_mod.CONSISTENT
        and report.statuses["hom_match_plain"] == audit_mod.DISCREPANT,
        "half-weights hom statuses are wrong",
    )
    report = audit_mod.run_audit(audit_mod.builtin_case("kummer2-trivialP"))
    q = report.quantities
    result.check(
        q["pushforward_degrees_coarse"] == [0, -1],
        "trivial-data coarse pushforward degrees are not [0, -1]",
    )
    result.check(
        q["pushforward_degrees_coarse"][1] < 0,
        "trivial-data quotient degree is not negative",
    )
    result.check(
        report.statuses["negative_quotient_degree_coarse"]
        == audit_mod.CONSISTENT,
        "trivial-data negative-degree status is wrong",
    )
    return result


ALL_SUITES = (
    suite_branch_calculus,
    suite_monodromy_structure,
    suite_genuine_vs_oracle,
    suite_degree_multiplicativity,
    suite_iota_invariance,
    suite_class_arithmetic,
    suite_bundle_filtration,
    suite_parabolic_identity,
    suite_equivariant_equivalence,
    suite_hom_equivalence,
    suite_adjunction,
    suite_audit_reproducibility,
)


def run_all(seed: int = 0, scale: int = 100) -> dict:
    results = []
    for index, suite in enumerate(ALL_SUITES):
        rng = Random(seed * 1_000_003 + index)
        results.append(suite(rng, scale))
    return {
        "seed": seed,
        "scale": scale,
        "ok": all(r.ok for r in results),
        "suites": [
            {"name": r.name, "cases": r.cases, "failures": r.failures}
            for r in results
        ],
    }
