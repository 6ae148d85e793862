"""Permutation presentations: connectivity, Galois, genuine ramification."""

from random import Random

import pytest

from orbicalc.curves import riemann_hurwitz_genus
from orbicalc.monodromy import (
    MonodromyDatum,
    Perm,
    group_order,
    is_connected,
    is_galois,
    is_genuinely_ramified,
    kummer_datum,
    max_etale_subcover,
    normal_closure_orbits,
    oracle_is_genuinely_ramified,
    parse_perm,
    ramification_profile_of,
)
from orbicalc.sampling import random_connected_monodromy, random_perm


def cyc(degree, *cycles):
    return Perm.from_cycles(degree, cycles)


def klein_datum():
    return MonodromyDatum(
        0,
        4,
        0,
        (),
        (
            ("a", cyc(4, (1, 2), (3, 4))),
            ("b", cyc(4, (1, 3), (2, 4))),
            ("c", cyc(4, (1, 4), (2, 3))),
        ),
    )


def s3_datum():
    return MonodromyDatum(
        0,
        3,
        0,
        (),
        (
            ("a", cyc(3, (1, 2))),
            ("b", cyc(3, (2, 3))),
            ("c", cyc(3, (1, 3, 2))),
        ),
    )


def block_datum():
    alpha = cyc(4, (1, 3), (2, 4))
    sigma = cyc(4, (1, 2))
    return MonodromyDatum(
        1, 4, 0, ((alpha, Perm.identity(4)),), (("p", sigma), ("q", sigma))
    )


def etale_datum():
    return MonodromyDatum(1, 2, 0, ((cyc(2, (1, 2)), Perm.identity(2)),), ())


class TestPerm:
    def test_roundtrip_cycle_notation(self):
        rng = Random(0)
        for _ in range(200):
            p = random_perm(rng, rng.randint(1, 9))
            assert parse_perm(str(p), p.degree) == p

    def test_composition_is_function_composition(self):
        p = cyc(3, (1, 2))
        q = cyc(3, (2, 3))
        assert (p * q)(1) == p(q(1))
        assert (p * q).images == (2, 3, 1)

    def test_product_of_cycles_rightmost_first(self):
        assert cyc(3, (1, 2), (2, 3)) == parse_perm("(1 2 3)", 3)

    def test_inverse(self):
        rng = Random(1)
        for _ in range(100):
            p = random_perm(rng, 7)
            assert (p * p.inverse()).is_identity()

    def test_cycle_type_includes_fixed_points(self):
        assert cyc(5, (1, 2, 3)).cycle_type() == (3, 1, 1)

    def test_rejects_non_bijection(self):
        with pytest.raises(ValueError):
            Perm((1, 1, 3))

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_perm("(1 2", 3)
        with pytest.raises(ValueError):
            parse_perm("1 2", 3)


class TestDatumValidation:
    def test_product_relation_enforced(self):
        with pytest.raises(ValueError):
            MonodromyDatum(0, 3, 0, (), (("a", cyc(3, (1, 2))),))

    def test_identity_branch_cycle_rejected(self):
        with pytest.raises(ValueError):
            MonodromyDatum(
                0, 2, 0, (),
                (("a", Perm.identity(2)), ("b", cyc(2, (1, 2))), ("c", cyc(2, (1, 2)))),
            )

    def test_wild_cycle_length_rejected(self):
        with pytest.raises(ValueError):
            MonodromyDatum(
                0, 2, 2, (),
                (("a", cyc(2, (1, 2))), ("b", cyc(2, (1, 2)))),
            )

    def test_handle_count_must_match_genus(self):
        with pytest.raises(ValueError):
            MonodromyDatum(1, 2, 0, (), ())


class TestConnectivity:
    def test_degree_one(self):
        assert is_connected(MonodromyDatum(0, 1, 0, (), ()))

    def test_split_cycles_disconnected(self):
        datum = MonodromyDatum(
            0, 4, 0, (),
            (
                ("a", cyc(4, (1, 2))),
                ("b", cyc(4, (1, 2))),
                ("c", cyc(4, (3, 4))),
                ("d", cyc(4, (3, 4))),
            ),
        )
        assert not is_connected(datum)

    def test_handle_connects(self):
        assert is_connected(etale_datum())

    def test_disconnected_rejected_downstream(self):
        datum = MonodromyDatum(
            0, 4, 0, (),
            (
                ("a", cyc(4, (1, 2))),
                ("b", cyc(4, (1, 2))),
                ("c", cyc(4, (3, 4))),
                ("d", cyc(4, (3, 4))),
            ),
        )
        for op in (
            ramification_profile_of,
            group_order,
            normal_closure_orbits,
            is_genuinely_ramified,
            max_etale_subcover,
            oracle_is_genuinely_ramified,
        ):
            with pytest.raises(ValueError):
                op(datum)


class TestProfiles:
    def test_power_map_profile(self):
        for m in (2, 3, 5):
            profile = ramification_profile_of(kummer_datum(m))
            assert profile.degree == m
            assert profile.galois
            fibers = {p.label: part for p, part in profile.fibers.items()}
            assert fibers == {"0": (m,), "inf": (m,)}
            assert profile.source.genus == 0

    def test_klein_profile(self):
        profile = ramification_profile_of(klein_datum())
        assert [part for _, part in sorted(
            (p.label, part) for p, part in profile.fibers.items()
        )] == [(2, 2)] * 3
        assert profile.source.genus == 0
        assert profile.galois

    def test_triple_cover_torus(self):
        sigma = cyc(3, (1, 2, 3))
        datum = MonodromyDatum(
            0, 3, 0, (),
            (("a", sigma), ("b", sigma), ("c", sigma)),
        )
        profile = ramification_profile_of(datum)
        assert profile.source.genus == 1
        assert riemann_hurwitz_genus(profile) == 1


class TestGroupOrder:
    def test_closure_kernel_matches_naive_enumeration(self):
        # The incremental closure underlies every group-order fact; pit
        # it against a plain one-shot breadth-first enumeration.
        from orbicalc.monodromy import _pack, _subgroup_elements

        def naive(degree, gens):
            identity = tuple(range(1, degree + 1))
            seen = {identity}
            frontier = [identity]
            while frontier:
                nxt = []
                for h in frontier:
                    for g in gens:
                        prod = tuple(g.images[h[i] - 1] for i in range(degree))
                        if prod not in seen:
                            seen.add(prod)
                            nxt.append(prod)
                frontier = nxt
            return len(seen)

        rng = Random(99)
        for _ in range(800):
            degree = rng.randint(1, 6)
            gens = [random_perm(rng, degree) for _ in range(rng.randint(1, 4))]
            packed = [_pack(g) for g in gens]
            assert len(_subgroup_elements(degree, packed, 10**7)) == naive(
                degree, gens
            )

    def test_power_map(self):
        assert group_order(kummer_datum(2)) == 2

    def test_klein(self):
        assert group_order(klein_datum()) == 4

    def test_symmetric_group_on_three_points(self):
        assert group_order(s3_datum()) == 6

    def test_cap(self):
        with pytest.raises(ValueError):
            group_order(s3_datum(), cap=4)

    def test_galois_iff_regular(self):
        assert is_galois(kummer_datum(6))
        assert is_galois(klein_datum())
        assert not is_galois(s3_datum())

    def test_galois_data_have_constant_cycle_type(self):
        rng = Random(2)
        seen = 0
        for _ in range(300):
            datum = random_connected_monodromy(rng, max_degree=6)
            if is_galois(datum):
                seen += 1
                for _, sigma in datum.branch_cycles:
                    assert len(set(sigma.cycle_type())) == 1
        assert seen > 0


class TestNormalClosure:
    def test_etale_datum_has_singleton_orbits(self):
        assert normal_closure_orbits(etale_datum()) == ((1,), (2,))

    def test_square_cover_single_orbit(self):
        assert normal_closure_orbits(kummer_datum(2)) == ((1, 2),)

    def test_genus_one_blocks(self):
        assert normal_closure_orbits(block_datum()) == ((1, 2), (3, 4))

    def test_orbits_are_equal_size_blocks(self):
        rng = Random(3)
        for _ in range(300):
            datum = random_connected_monodromy(rng)
            orbits = normal_closure_orbits(datum)
            sizes = {len(o) for o in orbits}
            assert len(sizes) == 1
            assert len(orbits) * sizes.pop() == datum.degree


class TestGenuineRamification:
    def test_power_maps_genuinely_ramified(self):
        for m in range(2, 9):
            assert is_genuinely_ramified(kummer_datum(m))

    def test_etale_not_genuinely_ramified(self):
        assert not is_genuinely_ramified(etale_datum())

    def test_block_example(self):
        assert not is_genuinely_ramified(block_datum())

    def test_klein(self):
        assert is_genuinely_ramified(klein_datum())
        assert oracle_is_genuinely_ramified(klein_datum())

    def test_oracle_agrees_on_named_cases(self):
        for datum in (
            kummer_datum(2),
            kummer_datum(5),
            klein_datum(),
            s3_datum(),
            block_datum(),
            etale_datum(),
        ):
            assert is_genuinely_ramified(datum) == oracle_is_genuinely_ramified(datum)

    def test_oracle_agrees_on_random_cases(self):
        rng = Random(4)
        for _ in range(200):
            datum = random_connected_monodromy(rng, max_degree=8)
            assert is_genuinely_ramified(datum) == oracle_is_genuinely_ramified(datum)

    def test_oracle_degree_cap(self):
        with pytest.raises(ValueError):
            oracle_is_genuinely_ramified(kummer_datum(9), max_degree=8)


class TestMaxEtaleSubcover:
    def test_genuinely_ramified_gives_degree_one(self):
        degree, block = max_etale_subcover(kummer_datum(4))
        assert degree == 1
        assert block.degree == 1

    def test_etale_input_is_its_own_subcover(self):
        degree, block = max_etale_subcover(etale_datum())
        assert degree == 2
        assert block == etale_datum()

    def test_genus_one_blocks(self):
        degree, block = max_etale_subcover(block_datum())
        assert degree == 2
        alpha, beta = block.handles[0]
        assert alpha == cyc(2, (1, 2))
        assert beta.is_identity()
        assert not block.branch_cycles
        assert is_connected(block)

    def test_block_data_consistent_on_random_cases(self):
        rng = Random(5)
        for _ in range(200):
            datum = random_connected_monodromy(rng)
            degree, block = max_etale_subcover(datum)
            assert degree * (datum.degree // degree) == datum.degree
            assert (degree == 1) == is_genuinely_ramified(datum)
            assert (degree == datum.degree) == (not datum.branch_cycles)
            assert not block.branch_cycles
            assert is_connected(block)
