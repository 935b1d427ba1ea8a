"""Explicit set families over small universes.

A family is a deduplicated set of bitmask subsets of [n] = {1..n} with
n <= 24 (the power-set tables used by the lattice operations stay under
16M entries at that bound). All values are immutable and all operations
are pure, so everything here is safe to share across threads.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .bitops import (
    MAX_EXPLICIT_N,
    close_upward,
    elements_of,
    mask_of,
    masks_where,
    membership_array,
)
from .errors import CapabilityError, ParseError, UniverseMismatchError


class SetFamily:
    """An explicit family of subsets of [n], stored as sorted bitmasks."""

    __slots__ = ("n", "members", "_mset")

    def __init__(self, n: int, members: "tuple[int, ...] | list[int] | set[int]" = ()):
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"universe size must be a positive integer, got {n!r}")
        if n > MAX_EXPLICIT_N:
            raise CapabilityError(
                f"explicit families support n <= {MAX_EXPLICIT_N}; "
                f"use a structured family for n = {n}"
            )
        masks = sorted({int(m) for m in members})
        if masks and (masks[0] < 0 or masks[-1] >= (1 << n)):
            bad = masks[0] if masks[0] < 0 else masks[-1]
            raise ValueError(f"mask {bad:#x} out of range for n = {n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "members", tuple(masks))
        object.__setattr__(self, "_mset", None)

    def __setattr__(self, *_):
        raise AttributeError("SetFamily is immutable")

    @classmethod
    def from_sets(cls, n: int, sets) -> "SetFamily":
        """Build from an iterable of element collections (1-based)."""
        return cls(n, [mask_of(s, n) for s in sets])

    @classmethod
    def full(cls, n: int) -> "SetFamily":
        """The whole power set of [n]."""
        return cls(n, range(1 << n))

    def sets(self) -> list[frozenset[int]]:
        return [frozenset(elements_of(m)) for m in self.members]

    def member_set(self) -> frozenset[int]:
        if self._mset is None:
            object.__setattr__(self, "_mset", frozenset(self.members))
        return self._mset

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, mask: int) -> bool:
        return mask in self.member_set()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SetFamily)
            and self.n == other.n
            and self.members == other.members
        )

    def __hash__(self) -> int:
        return hash((self.n, self.members))

    def __repr__(self) -> str:
        shown = [set(elements_of(m)) or "{}" for m in self.members[:6]]
        tail = ", ..." if len(self.members) > 6 else ""
        return f"SetFamily(n={self.n}, {len(self.members)} members: {shown}{tail})"


@dataclass(frozen=True)
class SizeProfile:
    """counts[j] = number of members of cardinality j, for j = 0..n."""

    n: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.n + 1:
            raise ValueError("profile must have n+1 entries")
        if any(c < 0 for c in self.counts):
            raise ValueError("profile counts must be nonnegative")

    @property
    def total(self) -> int:
        return sum(self.counts)


def _require_same_n(a: SetFamily, b: SetFamily) -> None:
    if a.n != b.n:
        raise UniverseMismatchError(f"universe sizes differ: {a.n} vs {b.n}")


def size_profile(family: SetFamily) -> SizeProfile:
    """Cardinality histogram of the family."""
    counts = [0] * (family.n + 1)
    for m in family.members:
        counts[m.bit_count()] += 1
    return SizeProfile(family.n, tuple(counts))


def upset_closure(family: SetFamily) -> SetFamily:
    """Smallest increasing superfamily: all supersets of members."""
    if not family.members:
        return family
    arr = membership_array(family.members, family.n)
    close_upward(arr, family.n)
    return SetFamily(family.n, masks_where(arr))


def is_increasing(family: SetFamily) -> bool:
    """True iff the family is closed under adding elements."""
    members = family.member_set()
    for m in members:
        free = ((1 << family.n) - 1) ^ m
        while free:
            low = free & -free
            if (m | low) not in members:
                return False
            free ^= low
    return True


def complement_family(family: SetFamily) -> SetFamily:
    """{[n] \\ x : x in F}; an involution preserving |F|."""
    full = (1 << family.n) - 1
    return SetFamily(family.n, [full ^ m for m in family.members])


def intersection_family(family: SetFamily) -> SetFamily:
    """All pairwise intersections {x & y : x, y in F} (includes F itself)."""
    masks = family.members
    if len(masks) > 512:
        arr = np.asarray(masks, dtype=np.int64)
        inter = np.unique(np.bitwise_and.outer(arr, arr))
        return SetFamily(family.n, inter.tolist())
    out = {x & y for i, x in enumerate(masks) for y in masks[i:]}
    return SetFamily(family.n, out)


def minimal_elements(family: SetFamily) -> SetFamily:
    """The inclusion-minimal members; an antichain with the same upset."""
    by_size = sorted(family.members, key=lambda m: (m.bit_count(), m))
    kept: list[int] = []
    for m in by_size:
        if not any(k & m == k for k in kept):
            kept.append(m)
    return SetFamily(family.n, kept)


def _iterated_intersections(start: list[int], members: list[int], rounds: int):
    """Unique r-fold intersections built level by level.

    Level t holds every intersection of one element of `start` with t
    further members (repetition allowed). Returns the final level, or
    stops early and returns [0] as soon as the empty set appears.
    """
    arr = np.unique(np.asarray(start, dtype=np.int64))
    mem = np.asarray(members, dtype=np.int64)
    for _ in range(rounds):
        if arr.size == 0:
            return arr
        if arr[0] == 0:
            return arr[:1]
        if arr.size * mem.size <= (1 << 23):
            arr = np.unique(np.bitwise_and.outer(arr, mem))
        else:
            step = max(1, (1 << 23) // mem.size)
            parts = [
                np.unique(np.bitwise_and.outer(arr[i : i + step], mem))
                for i in range(0, arr.size, step)
            ]
            arr = np.unique(np.concatenate(parts))
    return arr


def r_wise_intersecting(family: SetFamily, r: int) -> bool:
    """True iff every r members (repetition allowed) share an element.

    Evaluated on the minimal elements, which is equivalent for any
    family: each member contains a minimal member, and intersections
    only shrink when sets shrink.
    """
    if r < 2:
        raise ValueError(f"r-wise intersection needs r >= 2, got {r}")
    mins = minimal_elements(family).members
    if not mins:
        return True
    if mins[0] == 0:
        return False
    level = _iterated_intersections(list(mins), list(mins), r - 1)
    return level.size == 0 or level[0] != 0


def cross_intersecting(a: SetFamily, b: SetFamily) -> bool:
    """True iff every member of a meets every member of b."""
    _require_same_n(a, b)
    if not a.members or not b.members:
        return True
    ma = np.asarray(minimal_elements(a).members, dtype=np.int64)
    mb = np.asarray(minimal_elements(b).members, dtype=np.int64)
    return bool((np.bitwise_and.outer(ma, mb) != 0).all())


# ---------------------------------------------------------------------------
# family file format
#
# line 1: "n=<int>"; each further line one set as comma-separated 1-based
# elements in ascending order, or "-" for the empty set. Duplicates are an
# error. The writer emits members in ascending bitmask order, which makes
# write(load(f)) the identity on canonical files.
# ---------------------------------------------------------------------------


def parse_family(text: str) -> SetFamily:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("n="):
        raise ParseError(1, "expected header 'n=<int>'")
    try:
        n = int(lines[0][2:])
    except ValueError:
        raise ParseError(1, f"bad universe size {lines[0][2:]!r}") from None
    if n < 1:
        raise ParseError(1, f"universe size must be positive, got {n}")
    if n > MAX_EXPLICIT_N:
        raise CapabilityError(f"family files support n <= {MAX_EXPLICIT_N}, got {n}")
    seen: dict[int, int] = {}
    masks = []
    for line_no, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        if line == "-":
            mask = 0
        else:
            try:
                elems = [int(tok) for tok in line.split(",")]
            except ValueError:
                raise ParseError(line_no, f"malformed set line {line!r}") from None
            if any(not 1 <= e <= n for e in elems):
                raise ParseError(line_no, f"element outside [1..{n}] in {line!r}")
            if elems != sorted(set(elems)):
                raise ParseError(line_no, f"elements must be strictly ascending in {line!r}")
            mask = mask_of(elems, n)
        if mask in seen:
            raise ParseError(line_no, f"duplicate set (first seen on line {seen[mask]})")
        seen[mask] = line_no
        masks.append(mask)
    return SetFamily(n, masks)


def format_family(family: SetFamily) -> str:
    out = io.StringIO()
    out.write(f"n={family.n}\n")
    for m in family.members:
        out.write(",".join(str(e) for e in elements_of(m)) if m else "-")
        out.write("\n")
    return out.getvalue()


def load_family(path) -> SetFamily:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_family(fh.read())


def save_family(family: SetFamily, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_family(family))
