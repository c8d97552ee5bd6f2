"""Sensitivity, block sensitivity and minimum witness size, per input and aggregated."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .core import BooleanFunction, ProductMeasure, input_to_index, popcount
from .cube import cell_status, pattern_index


def _index(f: BooleanFunction, x) -> int:
    if isinstance(x, (int, np.integer)):
        if not 0 <= x < f.size:
            raise ValueError("input index out of range")
        return int(x)
    if len(x) != f.arity:
        raise ValueError(f"input has length {len(x)}, function has arity {f.arity}")
    return input_to_index(x)


def sensitivity_at(f: BooleanFunction, x) -> int:
    idx = _index(f, x)
    v = f.at(idx)
    return sum(1 for i in range(f.arity) if f.at(idx ^ (1 << i)) != v)


def sensitivities(f: BooleanFunction) -> np.ndarray:
    t = f.table
    idx = np.arange(f.size)
    s = np.zeros(f.size, dtype=np.int64)
    for i in range(f.arity):
        s += t[idx ^ (1 << i)] != t
    return s


@dataclass(frozen=True)
class SensitiveBlockFamily:
    """The inclusion-minimal blocks B with f(x^B) != f(x), as bitmasks."""

    base: int
    blocks: tuple[int, ...]

    def as_sets(self) -> list[frozenset[int]]:
        """Blocks as sets of 1-based bit positions."""
        return [frozenset(i + 1 for i in range(b.bit_length()) if (b >> i) & 1) for b in self.blocks]


def minimal_sensitive_blocks(f: BooleanFunction, x) -> SensitiveBlockFamily:
    """Enumerate flips by increasing size, keeping those that change f and
    dropping supersets of blocks already kept."""
    idx = _index(f, x)
    v = f.at(idx)
    n = f.arity
    by_size: list[list[int]] = [[] for _ in range(n + 1)]
    for b in range(1, 1 << n):
        by_size[popcount(b)].append(b)
    kept: list[int] = []
    for size in range(1, n + 1):
        for b in by_size[size]:
            if f.at(idx ^ b) == v:
                continue
            if any(k & b == k for k in kept):
                continue
            kept.append(b)
    return SensitiveBlockFamily(idx, tuple(kept))


def max_disjoint_blocks(blocks: Sequence[int]) -> int:
    """Maximum number of pairwise disjoint sets (bitmasks), by branch and bound."""
    blocks = sorted(set(blocks), key=lambda b: (popcount(b), b))
    best = 0

    def greedy_bound(rest: list[int], used: int) -> int:
        # disjoint blocks each take at least min-size bits of the still-free union
        if not rest:
            return 0
        union = 0
        for b in rest:
            union |= b
        smallest = popcount(rest[0])
        return min(len(rest), popcount(union & ~used) // smallest)

    def search(rest: list[int], used: int, count: int):
        nonlocal best
        if count > best:
            best = count
        if not rest or count + greedy_bound(rest, used) <= best:
            return
        head, tail = rest[0], rest[1:]
        search([b for b in tail if not b & head], used | head, count + 1)
        search(tail, used, count)

    search(blocks, 0, 0)
    return best


def _greedy_packing(blocks: list[int]) -> int:
    used = 0
    count = 0
    for b in sorted(blocks, key=popcount):
        if not b & used:
            used |= b
            count += 1
    return count


def min_hitting_set(blocks: Sequence[int]) -> int:
    """Smallest set of bits meeting every block; lower bound from a greedy packing."""
    blocks = list(set(blocks))
    if not blocks:
        return 0
    best = popcount(_union(blocks))

    def search(rest: list[int], size: int):
        nonlocal best
        if not rest:
            best = min(best, size)
            return
        if size + _greedy_packing(rest) >= best:
            return
        pivot = min(rest, key=popcount)
        b = pivot
        while b:
            bit = b & -b
            b ^= bit
            search([r for r in rest if not r & bit], size + 1)

    search(blocks, 0)
    return best


def _union(blocks) -> int:
    u = 0
    for b in blocks:
        u |= b
    return u


def block_sensitivity_at(f: BooleanFunction, x) -> int:
    # A disjoint family of sensitive blocks can be shrunk blockwise to
    # minimal sensitive blocks and stays disjoint, so packing the minimal
    # blocks is enough.
    return max_disjoint_blocks(minimal_sensitive_blocks(f, x).blocks)


def witness_size_at(f: BooleanFunction, x) -> int:
    # W forces f at x iff no sensitive block avoids W, i.e. W hits every
    # (minimal) sensitive block.
    return min_hitting_set(minimal_sensitive_blocks(f, x).blocks)


def witness_size_by_search(f: BooleanFunction, x) -> int:
    """Direct search over fixed sets: smallest |W| with f constant on the cell."""
    idx = _index(f, x)
    status = cell_status(f)
    n = f.arity
    best = n
    for w in range(1 << n):
        if popcount(w) < best and status[pattern_index(w, idx & w, n)] != 2:
            best = popcount(w)
    return best


def witness_sizes_by_search(f: BooleanFunction) -> np.ndarray:
    """Vectorised direct search of ``w_f(x)`` for all inputs."""
    n = f.arity
    const = cell_status(f) != 2
    xs = np.arange(1 << n, dtype=np.int64)
    best = np.full(1 << n, n, dtype=np.int64)
    for w in range(1 << n):
        k = popcount(w)
        pidx = np.zeros(1 << n, dtype=np.int64)
        for i in range(n):
            if (w >> i) & 1:
                pidx += ((xs >> i) & 1) * 3**i
            else:
                pidx += 2 * 3**i
        best = np.where(const[pidx] & (k < best), k, best)
    return best


class DeterministicMeasures(NamedTuple):
    s_D: int
    b_D: int
    w_D: int


class DistributionalMeasures(NamedTuple):
    s: Fraction
    b: Fraction
    w: Fraction


class PointwiseProfile(NamedTuple):
    s: np.ndarray
    b: np.ndarray
    w: np.ndarray


def pointwise_profile(f: BooleanFunction) -> PointwiseProfile:
    """``s_f``, ``b_f`` and ``w_f`` at every input."""
    return _profile(f.arity, f.bits)


_PROFILE_CACHE: dict[tuple[int, int], PointwiseProfile] = {}


def _profile(n: int, bits: int) -> PointwiseProfile:
    key = (n, bits)
    hit = _PROFILE_CACHE.get(key)
    if hit is not None:
        return hit
    f = BooleanFunction(n, bits)
    s = sensitivities(f)
    b = np.zeros(f.size, dtype=np.int64)
    w = np.zeros(f.size, dtype=np.int64)
    if not f.is_constant():
        for idx in range(f.size):
            fam = minimal_sensitive_blocks(f, idx).blocks
            b[idx] = max_disjoint_blocks(fam)
            w[idx] = min_hitting_set(fam)
    prof = PointwiseProfile(s, b, w)
    if len(_PROFILE_CACHE) > 4096:
        _PROFILE_CACHE.clear()
    _PROFILE_CACHE[key] = prof
    return prof


def deterministic_measures(f: BooleanFunction) -> DeterministicMeasures:
    prof = pointwise_profile(f)
    return DeterministicMeasures(int(prof.s.max()), int(prof.b.max()), int(prof.w.max()))


def expectation(values: np.ndarray, n: int, m: ProductMeasure) -> Fraction:
    """Exact ``E[values(x)]`` under m; values indexed by table index."""
    sums = [0] * (n + 1)
    for idx, v in enumerate(values.tolist()):
        if v:
            sums[popcount(idx)] += v
    return sum((c * m.weight(k, n - k) for k, c in enumerate(sums) if c), Fraction(0))


def distributional_measures(f: BooleanFunction, m: ProductMeasure) -> DistributionalMeasures:
    prof = pointwise_profile(f)
    n = f.arity
    return DistributionalMeasures(
        expectation(prof.s, n, m), expectation(prof.b, n, m), expectation(prof.w, n, m)
    )
