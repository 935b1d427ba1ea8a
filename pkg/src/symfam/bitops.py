"""Bitmask helpers for subsets of [n].

A subset of {1, ..., n} is an int bitmask: element i is present iff bit
i-1 is set. Boolean tables over the full power set are numpy bool arrays
indexed by mask value; the closure helpers below run one vectorized pass
per ground element using the shape trick arr.reshape(-1, 2, 2**b), which
splits mask space by the value of bit b.
"""

from __future__ import annotations

from collections.abc import Iterable

import numpy as np

MAX_EXPLICIT_N = 24


def mask_of(elements: Iterable[int], n: int) -> int:
    """Bitmask of a collection of 1-based elements of [n]."""
    m = 0
    for e in elements:
        if not 1 <= e <= n:
            raise ValueError(f"element {e} outside universe [1..{n}]")
        m |= 1 << (e - 1)
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    """Ascending 1-based elements of a bitmask."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def iter_bits(mask: int):
    """Yield the set bit positions (0-based) of a mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def membership_array(masks: Iterable[int], n: int) -> np.ndarray:
    """Bool array of length 2**n marking the given masks."""
    arr = np.zeros(1 << n, dtype=bool)
    idx = list(masks)
    if idx:
        arr[idx] = True
    return arr


def close_upward(arr: np.ndarray, n: int) -> np.ndarray:
    """In place, mark every superset of a marked mask. Returns arr."""
    for b in range(n):
        v = arr.reshape(-1, 2, 1 << b)
        v[:, 1, :] |= v[:, 0, :]
    return arr


def close_downward(arr: np.ndarray, n: int) -> np.ndarray:
    """In place, mark every subset of a marked mask. Returns arr."""
    for b in range(n):
        v = arr.reshape(-1, 2, 1 << b)
        v[:, 0, :] |= v[:, 1, :]
    return arr


def masks_where(arr: np.ndarray) -> list[int]:
    """Mask values marked in a power-set indicator array, ascending."""
    return np.flatnonzero(arr).tolist()
