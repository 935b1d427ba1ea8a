"""Permutations of [n], generated groups, and symmetry certification.

A family is *symmetric* when the permutations preserving it act
transitively on the ground set. For n <= 8 that is decided exactly by
sweeping S_n; beyond that a certificate consists of an explicit
transitive group of generators, each of which preserves the family.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .bitops import iter_bits
from .errors import CapabilityError, ParseError, UniverseMismatchError
from .families import SetFamily

AUT_BRUTE_FORCE_MAX_N = 8


class Permutation:
    """A permutation of [n]; images[i] = sigma(i+1), 1-based."""

    __slots__ = ("n", "images", "_bit_table")

    def __init__(self, images):
        images = tuple(int(v) for v in images)
        n = len(images)
        if n < 1 or sorted(images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of [1..{n}]: {images}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_bit_table", tuple(1 << (v - 1) for v in images))

    def __setattr__(self, *_):
        raise AttributeError("Permutation is immutable")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def from_cycles(cls, n: int, *cycles) -> "Permutation":
        """Build from disjoint cycles of 1-based elements."""
        images = list(range(1, n + 1))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + type(cycle)((cycle[0],))):
                images[a - 1] = b
        return cls(images)

    def apply_element(self, i: int) -> int:
        return self.images[i - 1]

    def apply_mask(self, mask: int) -> int:
        out = 0
        table = self._bit_table
        for b in iter_bits(mask):
            out |= table[b]
        return out

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self * other)(i) = self(other(i))."""
        if self.n != other.n:
            raise UniverseMismatchError("permutation degrees differ")
        return Permutation(tuple(self.images[v - 1] for v in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.images):
            inv[v - 1] = i + 1
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.images))

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


@dataclass(frozen=True)
class PermGroup:
    """A permutation group of degree n given by generators."""

    n: int
    generators: tuple[Permutation, ...]
    label: str = ""

    def __post_init__(self):
        if not self.generators:
            raise ValueError("a group needs at least one generator")
        if any(g.n != self.n for g in self.generators):
            raise UniverseMismatchError("generator degrees differ from group degree")


def apply_to_family(sigma: Permutation, family: SetFamily) -> SetFamily:
    """Image family {sigma(x) : x in F}; same size and size profile."""
    if sigma.n != family.n:
        raise UniverseMismatchError("permutation degree differs from family universe")
    return SetFamily(family.n, [sigma.apply_mask(m) for m in family.members])


def preserves_family(sigma: Permutation, family: SetFamily) -> bool:
    """True iff sigma(F) = F as sets."""
    if sigma.n != family.n:
        raise UniverseMismatchError("permutation degree differs from family universe")
    members = family.member_set()
    return all(sigma.apply_mask(m) in members for m in members)


def orbit_of_point(group: PermGroup, i: int) -> frozenset[int]:
    """Closure of {i} under the generators (= orbit of the generated group)."""
    if not 1 <= i <= group.n:
        raise ValueError(f"point {i} outside [1..{group.n}]")
    seen = {i}
    frontier = [i]
    while frontier:
        nxt = []
        for g in group.generators:
            for x in frontier:
                y = g.apply_element(x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def is_transitive(group: PermGroup) -> bool:
    return len(orbit_of_point(group, 1)) == group.n


class _PointUnionFind:
    """Tracks ground-set connectivity under discovered automorphisms."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.classes = n

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra
            self.classes -= 1


def iter_automorphisms(family: SetFamily):
    """Yield every sigma in S_n with sigma(F) = F. Requires n <= 8."""
    n = family.n
    if n > AUT_BRUTE_FORCE_MAX_N:
        raise CapabilityError(
            f"brute-force automorphism sweep supports n <= {AUT_BRUTE_FORCE_MAX_N}; "
            "certify larger universes with symmetry_witness and an explicit group"
        )
    members = family.member_set()
    for images in itertools.permutations(range(1, n + 1)):
        table = tuple(1 << (v - 1) for v in images)
        ok = True
        for m in members:
            img = 0
            for b in iter_bits(m):
                img |= table[b]
            if img not in members:
                ok = False
                break
        if ok:
            yield Permutation(images)


def automorphism_transitive(family: SetFamily) -> bool:
    """Decide symmetry exactly by sweeping S_n (n <= 8).

    The preserving permutations form a group, so the ground set is
    transitive under them iff the union-find over all generator edges
    ends with a single class. Stops early once that happens.
    """
    uf = _PointUnionFind(family.n)
    if uf.classes == 1:
        return True
    for sigma in iter_automorphisms(family):
        for i, v in enumerate(sigma.images):
            uf.union(i, v - 1)
        if uf.classes == 1:
            return True
    return False


def symmetry_witness(
    family,
    group: PermGroup,
    *,
    exhaustive_limit: int = 1 << 16,
    minimal_limit: int = 200_000,
    samples: int = 100_000,
    seed: int = 0,
) -> bool:
    """Certify symmetry of an explicit or structured family via a group.

    True means every generator preserves the family and the group is
    transitive, i.e. the group witnesses a transitive subgroup of the
    automorphism group. Explicit families are checked exactly. For
    structured families the check is exact when the family is defined
    by cardinality alone, when 2**n fits the exhaustive budget, or when
    the minimal-member antichain is enumerable; otherwise it falls back
    to seeded random sampling of the membership oracle.
    """
    n = getattr(family, "n")
    if group.n != n:
        raise UniverseMismatchError("group degree differs from family universe")
    if not is_transitive(group):
        return False
    if isinstance(family, SetFamily):
        return all(preserves_family(g, family) for g in group.generators)

    # structured family: membership-oracle comparison
    if getattr(family, "cardinality_defined", False):
        return True  # permutations preserve cardinality, hence membership
    contains = family.contains
    minimal_count = getattr(family, "minimal_count", None)
    if minimal_count is not None and minimal_count <= minimal_limit and family.increasing:
        # an increasing family is preserved iff its minimal antichain is
        antichain = frozenset(family.iter_minimal_members())
        for g in group.generators:
            if any(g.apply_mask(m) not in antichain for m in antichain):
                return False
        return True
    if (1 << n) <= exhaustive_limit:
        for g in group.generators:
            for mask in range(1 << n):
                if contains(mask) != contains(g.apply_mask(mask)):
                    return False
        return True
    rng = random.Random(seed)
    for _ in range(samples):
        mask = rng.getrandbits(n)
        for g in group.generators:
            if contains(mask) != contains(g.apply_mask(mask)):
                return False
    return True


# ---------------------------------------------------------------------------
# group file format
#
# line 1: "n=<int>"; each further line one permutation as n space-separated
# images ("2 3 1" maps 1->2, 2->3, 3->1).
# ---------------------------------------------------------------------------


def parse_group(text: str, label: str = "") -> PermGroup:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("n="):
        raise ParseError(1, "expected header 'n=<int>'")
    try:
        n = int(lines[0][2:])
    except ValueError:
        raise ParseError(1, f"bad degree {lines[0][2:]!r}") from None
    if n < 1:
        raise ParseError(1, f"degree must be positive, got {n}")
    gens = []
    for line_no, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        try:
            images = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(line_no, f"malformed permutation line {line!r}") from None
        if len(images) != n:
            raise ParseError(line_no, f"expected {n} images, got {len(images)}")
        try:
            gens.append(Permutation(images))
        except ValueError as exc:
            raise ParseError(line_no, str(exc)) from None
    if not gens:
        raise ParseError(len(lines), "group file holds no permutations")
    return PermGroup(n, tuple(gens), label=label)


def format_group(group: PermGroup) -> str:
    lines = [f"n={group.n}"]
    lines.extend(" ".join(str(v) for v in g.images) for g in group.generators)
    return "\n".join(lines) + "\n"


def load_group(path, label: str = "") -> PermGroup:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if not label:
        from pathlib import Path

        label = f"user:{Path(path).stem}"
    return parse_group(text, label=label)


def save_group(group: PermGroup, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_group(group))


# built-in generator sets ----------------------------------------------------


def cyclic_group(n: int) -> PermGroup:
    """C_n generated by the n-cycle (1 2 ... n)."""
    images = list(range(2, n + 1)) + [1]
    return PermGroup(n, (Permutation(images),), label=f"C{n}")


def dihedral_group(n: int) -> PermGroup:
    """D_n: the n-cycle plus the reflection i -> n+1-i (n >= 3)."""
    if n < 3:
        raise ValueError("dihedral groups need n >= 3")
    cycle = Permutation(list(range(2, n + 1)) + [1])
    reflection = Permutation(range(n, 0, -1))
    return PermGroup(n, (cycle, reflection), label=f"D{n}")


def symmetric_group(n: int) -> PermGroup:
    """S_n generated by (1 2) and the n-cycle."""
    if n == 1:
        return PermGroup(1, (Permutation.identity(1),), label="S1")
    gens = [Permutation.from_cycles(n, (1, 2))]
    if n > 2:
        gens.append(Permutation(list(range(2, n + 1)) + [1]))
    return PermGroup(n, tuple(gens), label=f"S{n}")
