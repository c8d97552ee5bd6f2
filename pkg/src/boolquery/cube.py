"""Ternary indexing of subcubes of {0,1}^n.

A subcube (equivalently a restriction) is a pattern with digit ``d_i`` in
{0, 1, 2} per bit, 2 meaning free. Patterns are indexed by ``sum(d_i * 3**i)``,
so reshaping a flat array to ``(3**(n-1-i), 3, 3**i)`` puts bit ``i`` on the
middle axis.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .core import BooleanFunction, Restriction

FREE = 2
MIXED = 2


def pattern_index(mask: int, values: int, n: int) -> int:
    idx = 0
    p = 1
    for i in range(n):
        if (mask >> i) & 1:
            idx += ((values >> i) & 1) * p
        else:
            idx += 2 * p
        p *= 3
    return idx


def restriction_index(r: Restriction, n: int) -> int:
    return pattern_index(r.assigned, r.values, n)


def pattern_of_index(idx: int, n: int) -> tuple[int, int]:
    mask = values = 0
    for i in range(n):
        d = idx % 3
        idx //= 3
        if d != FREE:
            mask |= 1 << i
            if d:
                values |= 1 << i
    return mask, values


@lru_cache(maxsize=32)
def free_counts(n: int) -> np.ndarray:
    """Number of free digits of every pattern index."""
    fc = np.zeros(1, dtype=np.int8)
    for _ in range(n):
        fc = np.concatenate([fc, fc, fc + 1])
    fc.setflags(write=False)
    return fc


@lru_cache(maxsize=32)
def fixed_masks(n: int) -> tuple[np.ndarray, np.ndarray]:
    """(mask, values) arrays for every pattern index."""
    mask = np.zeros(1, dtype=np.int64)
    vals = np.zeros(1, dtype=np.int64)
    for i in range(n):
        b = 1 << i
        mask = np.concatenate([mask + b, mask + b, mask])
        vals = np.concatenate([vals, vals + b, vals])
    mask.setflags(write=False)
    vals.setflags(write=False)
    return mask, vals


def cell_status(f: BooleanFunction) -> np.ndarray:
    """For every pattern: 0 or 1 if f is constant on the cell, 2 if not."""
    return _cell_status(f.arity, f.bits)


@lru_cache(maxsize=256)
def _cell_status(n: int, bits: int) -> np.ndarray:
    f = BooleanFunction(n, bits)
    t = f.table.astype(np.int8)
    for i in range(n):
        lo = 3**i if i else 1
        # after i steps the low i digits are ternary, the rest binary
        t = t.reshape(-1, 2, lo)
        s0, s1 = t[:, 0, :], t[:, 1, :]
        comb = np.where(s0 == s1, s0, MIXED).astype(np.int8)
        t = np.stack([s0, s1, comb], axis=1).reshape(-1)
    t = t.reshape(-1)
    t.setflags(write=False)
    return t


def bit_view(arr: np.ndarray, i: int) -> np.ndarray:
    """View with bit ``i`` on axis 1 (length 3)."""
    return arr.reshape(-1, 3, 3**i)


def cell_points(mask: int, values: int, n: int) -> int:
    """Bitmask over table indices of the points in a cell."""
    free = [i for i in range(n) if not (mask >> i) & 1]
    pts = 1 << values
    for i in free:
        pts |= pts << (1 << i)
    return pts
