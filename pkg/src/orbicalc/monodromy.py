"""Permutation presentations of branched covers and their decision procedures.

A degree-``d`` cover of a genus-``g`` curve branched over ``k`` points is
presented by permutations of ``{1..d}``: a pair (alpha_i, beta_i) per
handle and one cycle sigma_j per branch point, subject to the relation

    [alpha_1, beta_1] ... [alpha_g, beta_g] sigma_1 ... sigma_k = identity,

with products read as function composition (the rightmost factor acts
first).  Connectivity of the total space is transitivity, the cover is
Galois exactly when the generated group acts regularly, and the cycle
type of sigma_j is the fiber partition over the j-th branch point.

Genuine ramification is decided through the normal closure N of the
branch cycles: with G the monodromy group and H the stabilizer of 1, the
induced map on fundamental groups is onto in the finite quotient exactly
when H.N = G; since H fixes 1 the HN-orbit of 1 is the N-orbit of 1, so
H.N = G if and only if N is transitive.  The orbits of N are blocks of
the G-action and present the maximal intermediate cover that is etale
over the base.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .curves import (
    CurveTag,
    RamificationProfile,
    _check_tame,
    expected_source_genus,
)

DEFAULT_GROUP_CAP = 10_000_000
DEFAULT_ORACLE_DEGREE = 8


@dataclass(frozen=True)
class Perm:
    """A permutation of ``{1..d}`` stored as its tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        d = len(self.images)
        if d == 0:
            raise ValueError("permutation degree must be positive")
        if sorted(self.images) != list(range(1, d + 1)):
            raise ValueError(f"not a permutation of 1..{d}: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(tuple(range(1, degree + 1)))

    @classmethod
    def from_cycles(
        cls, degree: int, cycles: Iterable[Sequence[int]]
    ) -> "Perm":
        """Product of cycles, the rightmost cycle acting first."""
        normalized = [tuple(cycle) for cycle in cycles]
        for cycle in normalized:
            for value in cycle:
                if not 1 <= value <= degree:
                    raise ValueError(f"cycle entry {value} outside 1..{degree}")
            if len(set(cycle)) != len(cycle):
                raise ValueError(f"repeated entry in cycle {cycle}")
        result = cls.identity(degree)
        for cycle in normalized:
            step = list(range(1, degree + 1))
            for i, value in enumerate(cycle):
                step[value - 1] = cycle[(i + 1) % len(cycle)]
            result = result * cls(tuple(step))
        return result

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Perm") -> "Perm":
        """Function composition: ``(p * q)(i) = p(q(i))``."""
        if self.degree != other.degree:
            raise ValueError("cannot compose permutations of different degrees")
        return Perm(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Perm":
        out = [0] * self.degree
        for i, j in enumerate(self.images, start=1):
            out[j - 1] = i
        return Perm(tuple(out))

    def is_identity(self) -> bool:
        return all(j == i for i, j in enumerate(self.images, start=1))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Nontrivial cycles, each starting at its least element."""
        seen: set[int] = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen or self(start) == start:
                continue
            cycle = [start]
            seen.add(start)
            j = self(start)
            while j != start:
                cycle.append(j)
                seen.add(j)
                j = self(j)
            out.append(tuple(cycle))
        return tuple(out)

    def cycle_type(self) -> tuple[int, ...]:
        """Partition of the degree by cycle lengths, fixed points included."""
        lengths = [len(c) for c in self.cycles()]
        lengths += [1] * (self.degree - sum(lengths))
        return tuple(sorted(lengths, reverse=True))

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def parse_perm(text: str, degree: int) -> Perm:
    """Parse cycle notation like ``"(1 2)(3 4)"``; ``"()"`` is the identity."""
    stripped = text.replace(",", " ").strip()
    if stripped in ("", "()"):
        return Perm.identity(degree)
    if not stripped.startswith("(") or not stripped.endswith(")"):
        raise ValueError(f"malformed cycle notation: {text!r}")
    cycles = []
    for chunk in stripped[1:-1].split(")("):
        entries = chunk.split()
        if not entries:
            continue
        try:
            cycles.append(tuple(int(entry) for entry in entries))
        except ValueError as exc:
            raise ValueError(f"malformed cycle notation: {text!r}") from exc
    return Perm.from_cycles(degree, cycles)


@dataclass(frozen=True)
class MonodromyDatum:
    """Permutation data of a branched cover of a curve.

    ``handles`` holds one (alpha, beta) pair per handle of the base;
    ``branch_cycles`` pairs each genuinely branched target point label
    with a non-identity permutation.  The product relation is enforced,
    as is tameness of every cycle length.
    """

    base_genus: int
    degree: int
    characteristic: int = 0
    handles: tuple[tuple[Perm, Perm], ...] = ()
    branch_cycles: tuple[tuple[str, Perm], ...] = ()
    base_name: str = "X"
    cover_name: str = "Y"

    def __post_init__(self) -> None:
        if self.base_genus < 0:
            raise ValueError("base genus must be non-negative")
        if self.degree < 1:
            raise ValueError("degree must be positive")
        if len(self.handles) != self.base_genus:
            raise ValueError(
                f"expected {self.base_genus} handle pairs, got {len(self.handles)}"
            )
        for pair in self.handles:
            for perm in pair:
                if perm.degree != self.degree:
                    raise ValueError("handle permutation of wrong degree")
        labels = [label for label, _ in self.branch_cycles]
        if len(labels) != len(set(labels)):
            raise ValueError("duplicate branch point labels")
        for label, sigma in self.branch_cycles:
            if not label:
                raise ValueError("branch point label must be non-empty")
            if sigma.degree != self.degree:
                raise ValueError("branch cycle of wrong degree")
            if sigma.is_identity():
                raise ValueError(
                    f"branch cycle at {label!r} is the identity; drop it"
                )
            for length in sigma.cycle_type():
                _check_tame(length, self.characteristic, "cycle length")
        product = Perm.identity(self.degree)
        for alpha, beta in self.handles:
            product = product * (
                alpha * beta * alpha.inverse() * beta.inverse()
            )
        for _, sigma in self.branch_cycles:
            product = product * sigma
        if not product.is_identity():
            raise ValueError("product relation violated")

    def generators(self) -> tuple[Perm, ...]:
        gens: list[Perm] = []
        for alpha, beta in self.handles:
            gens.extend((alpha, beta))
        gens.extend(sigma for _, sigma in self.branch_cycles)
        return tuple(gens)

    @property
    def target(self) -> CurveTag:
        return CurveTag(self.base_name, self.base_genus, self.characteristic)


def kummer_datum(
    m: int,
    characteristic: int = 0,
    zero_label: str = "0",
    infinity_label: str = "inf",
) -> MonodromyDatum:
    """Monodromy of the degree-``m`` cyclic cover totally ramified over
    two points of the genus-0 curve."""
    if m < 2:
        raise ValueError("kummer datum needs degree >= 2")
    rotation = Perm.from_cycles(m, [tuple(range(1, m + 1))])
    return MonodromyDatum(
        base_genus=0,
        degree=m,
        characteristic=characteristic,
        branch_cycles=(
            (zero_label, rotation),
            (infinity_label, rotation.inverse()),
        ),
    )


def _orbit(start: int, gens: Sequence[Perm]) -> set[int]:
    seen = {start}
    frontier = [start]
    while frontier:
        i = frontier.pop()
        for g in gens:
            j = g(i)
            if j not in seen:
                seen.add(j)
                frontier.append(j)
    return seen


# Group enumeration kernel.  Permutations are packed into bytes of 0-based
# images so that composition is a single C-level bytes.translate call:
# h.translate(table(g)) has image g(h(i)) at i, i.e. the product g o h.

_BYTE_TAIL = bytes(range(256))


def _pack(perm: Perm) -> bytes:
    if perm.degree > 255:
        raise ValueError("group algorithms support degree <= 255")
    return bytes(i - 1 for i in perm.images)


def _unpack(packed: bytes) -> Perm:
    return Perm(tuple(i + 1 for i in packed))


def _table(packed: bytes) -> bytes:
    return packed + _BYTE_TAIL[len(packed):]


def _inv_packed(packed: bytes) -> bytes:
    out = bytearray(len(packed))
    for i, j in enumerate(packed):
        out[j] = i
    return bytes(out)


def _subgroup_elements(
    degree: int, gens: Sequence[bytes], cap: int
) -> set[bytes]:
    """Elements of the generated group, generators added incrementally.

    A generator already inside the group built so far costs one set
    lookup, so long redundant generating sets (conjugate closures) stay
    cheap.  When a genuinely new generator arrives, its products with
    every existing element are seeded explicitly and the closure resumes
    from there; new elements are expanded with all kept generators, so
    on exit the set is closed under every generator from every element.
    """
    identity = bytes(range(degree))
    elements = {identity}
    kept_tables: list[bytes] = []
    for g in gens:
        if g in elements:
            continue
        g_table = _table(g)
        kept_tables.append(g_table)
        frontier = []
        for h in list(elements):
            prod = h.translate(g_table)
            if prod not in elements:
                if len(elements) >= cap:
                    raise ValueError(f"group enumeration exceeded cap {cap}")
                elements.add(prod)
                frontier.append(prod)
        while frontier:
            nxt = []
            for h in frontier:
                for t in kept_tables:
                    prod = h.translate(t)
                    if prod not in elements:
                        if len(elements) >= cap:
                            raise ValueError(
                                f"group enumeration exceeded cap {cap}"
                            )
                        elements.add(prod)
                        nxt.append(prod)
            frontier = nxt
    return elements


def _subgroup_size(degree: int, gens: Sequence[bytes], cap: int) -> int:
    return len(_subgroup_elements(degree, gens, cap))


def is_connected(datum: MonodromyDatum) -> bool:
    """Whether the total space is connected: transitivity of the action."""
    return len(_orbit(1, datum.generators())) == datum.degree


def _require_connected(datum: MonodromyDatum) -> None:
    if not is_connected(datum):
        raise ValueError("monodromy datum is disconnected")


def group_order(datum: MonodromyDatum, cap: int = DEFAULT_GROUP_CAP) -> int:
    """Order of the monodromy group by closure enumeration."""
    _require_connected(datum)
    packed = [_pack(g) for g in datum.generators()]
    return _subgroup_size(datum.degree, packed, cap)


def is_galois(datum: MonodromyDatum, cap: int = DEFAULT_GROUP_CAP) -> bool:
    """Whether the cover is Galois: the action is regular."""
    return group_order(datum, cap) == datum.degree


def ramification_profile_of(
    datum: MonodromyDatum, cap: int = DEFAULT_GROUP_CAP
) -> RamificationProfile:
    """Cover skeleton of the datum: fiber partitions are the cycle types."""
    _require_connected(datum)
    target = datum.target
    fibers = {
        target.point(label): sigma.cycle_type()
        for label, sigma in datum.branch_cycles
    }
    genus = expected_source_genus(
        datum.base_genus, datum.degree, list(fibers.values())
    )
    source = CurveTag(datum.cover_name, genus, datum.characteristic)
    return RamificationProfile(
        source,
        target,
        datum.degree,
        fibers,
        galois=is_galois(datum, cap),
    )


def _normal_closure_packed(datum: MonodromyDatum) -> list[bytes]:
    """All conjugates of the branch cycles, closed under generator conjugation.

    Iterating conjugation by the generators reaches conjugation by every
    group element, so this set generates the normal closure.
    """
    conj_tables = []
    for g in datum.generators():
        packed = _pack(g)
        conj_tables.append((_table(packed), _inv_packed(packed)))
    seen = {_pack(sigma) for _, sigma in datum.branch_cycles}
    frontier = list(seen)
    while frontier:
        s = frontier.pop()
        s_table = _table(s)
        for g_table, g_inverse in conj_tables:
            # g(s(g^{-1}(i))): start from g^{-1}, then apply s, then g.
            conj = g_inverse.translate(s_table).translate(g_table)
            if conj not in seen:
                seen.add(conj)
                frontier.append(conj)
    return sorted(seen)


def normal_closure_generators(datum: MonodromyDatum) -> tuple[Perm, ...]:
    """Generating set of the normal closure of the branch cycles."""
    return tuple(_unpack(packed) for packed in _normal_closure_packed(datum))


def normal_closure_orbits(datum: MonodromyDatum) -> tuple[tuple[int, ...], ...]:
    """Orbits of the normal closure of the branch cycles; blocks of the action."""
    _require_connected(datum)
    parent = list(range(datum.degree))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for packed in _normal_closure_packed(datum):
        for i, j in enumerate(packed):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[rj] = ri
    orbits: dict[int, list[int]] = {}
    for i in range(datum.degree):
        orbits.setdefault(find(i), []).append(i + 1)
    return tuple(
        tuple(orbit) for orbit in sorted(orbits.values(), key=lambda o: o[0])
    )


def is_genuinely_ramified(datum: MonodromyDatum) -> bool:
    """Whether the cover is genuinely ramified.

    Equivalent formulations: the cover factors through no nontrivial
    intermediate cover etale over the base, and the induced map of
    fundamental groups is onto.  In the finite quotient, surjectivity is
    ``H.N = G`` with H the stabilizer of 1 and N the normal closure of
    the branch cycles; since H fixes 1, that holds exactly when N is
    transitive.
    """
    return len(normal_closure_orbits(datum)) == 1


def max_etale_subcover(
    datum: MonodromyDatum,
) -> tuple[int, MonodromyDatum]:
    """Largest intermediate cover etale over the base.

    Returns its degree (the number of orbits of the normal closure of
    the branch cycles) and the induced monodromy datum on those blocks.
    Every branch cycle lies in the normal closure, hence acts trivially
    on the blocks; this is checked and the induced datum carries no
    branch cycles.  The residual cover of the intermediate curve has
    degree ``degree / #blocks``.
    """
    _require_connected(datum)
    orbits = normal_closure_orbits(datum)
    block_index: dict[int, int] = {}
    for index, orbit in enumerate(orbits, start=1):
        for point in orbit:
            block_index[point] = index

    def induced(perm: Perm) -> Perm:
        images = [0] * len(orbits)
        for index, orbit in enumerate(orbits, start=1):
            images[index - 1] = block_index[perm(orbit[0])]
        return Perm(tuple(images))

    for label, sigma in datum.branch_cycles:
        if not induced(sigma).is_identity():
            raise ValueError(
                f"branch cycle at {label!r} acts on the blocks; "
                "the intermediate cover is not etale"
            )
    block_datum = MonodromyDatum(
        base_genus=datum.base_genus,
        degree=len(orbits),
        characteristic=datum.characteristic,
        handles=tuple(
            (induced(alpha), induced(beta)) for alpha, beta in datum.handles
        ),
        branch_cycles=(),
        base_name=datum.base_name,
        cover_name=datum.cover_name,
    )
    return len(orbits), block_datum


def _stabilizer_generators(datum: MonodromyDatum) -> tuple[Perm, ...]:
    """Schreier generators of the stabilizer of 1 in the monodromy group."""
    gens = datum.generators()
    identity = Perm.identity(datum.degree)
    transversal: dict[int, Perm] = {1: identity}
    frontier = [1]
    while frontier:
        i = frontier.pop()
        for g in gens:
            j = g(i)
            if j not in transversal:
                transversal[j] = g * transversal[i]
                frontier.append(j)
    out: dict[tuple[int, ...], Perm] = {}
    for i, t_i in transversal.items():
        for g in gens:
            u = transversal[g(i)].inverse() * g * t_i
            if not u.is_identity():
                out[u.images] = u
    return tuple(out.values())


def oracle_is_genuinely_ramified(
    datum: MonodromyDatum,
    max_degree: int = DEFAULT_ORACLE_DEGREE,
    cap: int = DEFAULT_GROUP_CAP,
) -> bool:
    """Brute-force genuine-ramification test for small degrees.

    Enumerates the subgroup generated by the stabilizer of 1 together
    with the normal closure of the branch cycles and compares it with
    the full monodromy group.
    """
    _require_connected(datum)
    if datum.degree > max_degree:
        raise ValueError(
            f"oracle restricted to degree <= {max_degree}, got {datum.degree}"
        )
    stab_gens = [_pack(u) for u in _stabilizer_generators(datum)]
    closure_gens = _normal_closure_packed(datum)
    joint = _subgroup_size(datum.degree, stab_gens + closure_gens, cap)
    full = _subgroup_size(
        datum.degree, [_pack(g) for g in datum.generators()], cap
    )
    return joint == full
