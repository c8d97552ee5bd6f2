"""Subcube partitions and their exact optimal costs.

A partition refining f splits into a partition of f^-1(1) and one of
f^-1(0), so both level sets are covered independently. Each cover is an
exact-cover search: take an uncovered point, branch over every f-constant
cell that contains it and avoids what is already covered.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .core import BooleanFunction, CapExceeded, ProductMeasure, degree, popcount
from .cube import cell_points, cell_status, pattern_index
from .pointwise import pointwise_profile

DEFAULT_SUBCUBE_CAP = 6
DET = "DET"


@dataclass(frozen=True)
class SubcubePattern:
    """Cell over {0,1,*}: ``mask`` marks fixed bits, ``values`` their values."""

    n: int
    mask: int
    values: int

    @classmethod
    def parse(cls, text: str) -> "SubcubePattern":
        s = text.strip().replace(",", "").replace(" ", "")
        s = s.strip("()").replace("★", "*")
        mask = values = 0
        for i, ch in enumerate(s):
            if ch == "*":
                continue
            if ch not in "01":
                raise ValueError(f"bad cell character {ch!r} in {text!r}")
            mask |= 1 << i
            if ch == "1":
                values |= 1 << i
        return cls(len(s), mask, values)

    def __str__(self):
        return "".join(
            "*" if not (self.mask >> i) & 1 else str((self.values >> i) & 1) for i in range(self.n)
        )

    @property
    def codim(self) -> int:
        return popcount(self.mask)

    def contains(self, idx: int) -> bool:
        return (idx & self.mask) == self.values

    def points(self) -> int:
        return cell_points(self.mask, self.values, self.n)

    def compatible(self, other: "SubcubePattern") -> bool:
        """True iff the two cells share a point."""
        common = self.mask & other.mask
        return (self.values & common) == (other.values & common)


SubcubePartition = list[SubcubePattern]


def parse_partition(text: str) -> SubcubePartition:
    cells = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            cells.append(SubcubePattern.parse(line))
    return cells


def dumps_partition(P: Iterable[SubcubePattern]) -> str:
    return "".join(f"{c}\n" for c in P)


def load_partition(path) -> SubcubePartition:
    return parse_partition(Path(path).read_text())


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def check_partition(P: Sequence[SubcubePattern], n: int) -> Verdict:
    if any(c.n != n for c in P):
        return Verdict(False, "pattern length differs from arity")
    for a in range(len(P)):
        for b in range(a + 1, len(P)):
            if P[a].compatible(P[b]):
                return Verdict(False, f"overlap: {P[a]} and {P[b]}")
    total = sum(1 << (n - c.codim) for c in P)
    if total != 1 << n:
        return Verdict(False, f"gap: cells cover {total} of {1 << n} points")
    return Verdict(True)


def verify_partition(P: Sequence[SubcubePattern], f: BooleanFunction) -> Verdict:
    """Partition of the cube with f constant on every cell."""
    v = check_partition(P, f.arity)
    if not v:
        return v
    status = cell_status(f)
    for c in P:
        if status[pattern_index(c.mask, c.values, f.arity)] == 2:
            return Verdict(False, f"f not constant on {c}")
    return Verdict(True)


def _require(P, n):
    v = check_partition(P, n)
    if not v:
        raise ValueError(f"not a partition: {v.reason}")


def cell_mass(c: SubcubePattern, m: ProductMeasure) -> Fraction:
    ones = popcount(c.values)
    return m.weight(ones, c.codim - ones)


def partition_cost(P: Sequence[SubcubePattern], m: ProductMeasure | str = DET):
    """Max codimension (``DET``) or expected codimension under m."""
    if not P:
        raise ValueError("empty partition")
    _require(P, P[0].n)
    if m == DET:
        return max(c.codim for c in P)
    return sum((cell_mass(c, m) * c.codim for c in P), Fraction(0))


def partition_boundary(P: Sequence[SubcubePattern]) -> int:
    """Cube edges whose endpoints lie in different cells."""
    n = P[0].n
    _require(P, n)
    label = np.empty(1 << n, dtype=np.int64)
    for k, c in enumerate(P):
        idx = np.arange(1 << n)
        label[(idx & c.mask) == c.values] = k
    idx = np.arange(1 << n)
    total = 0
    for i in range(n):
        low = idx[(idx >> i) & 1 == 0]
        total += int(np.count_nonzero(label[low] != label[low | (1 << i)]))
    return total


def is_algorithm_induced(P: Sequence[SubcubePattern]) -> bool:
    """True iff P arises from recursive axis-parallel splits (leaves of a tree)."""
    n = P[0].n
    _require(P, n)

    def rec(cells: list[tuple[int, int]], free: int) -> bool:
        if len(cells) == 1:
            return True
        fixed_by_all = free
        for mask, _ in cells:
            fixed_by_all &= mask
        i_bits = fixed_by_all
        while i_bits:
            b = i_bits & -i_bits
            i_bits ^= b
            halves = (
                [(mk & ~b, v & ~b) for mk, v in cells if not v & b],
                [(mk & ~b, v & ~b) for mk, v in cells if v & b],
            )
            if all(rec(h, free & ~b) for h in halves):
                return True
        return False

    return rec([(c.mask, c.values) for c in P], (1 << n) - 1)


def tree_partition(t, n: int) -> SubcubePartition:
    """Leaves of a decision tree as a partition."""
    from .dtree import Leaf

    out = []

    def rec(node, mask, vals):
        if isinstance(node, Leaf):
            out.append(SubcubePattern(n, mask, vals))
            return
        b = 1 << node.bit
        rec(node.zero, mask | b, vals)
        rec(node.one, mask | b, vals | b)

    rec(t, 0, 0)
    return out


# ----------------------------------------------------------------- search


def _check_cap(n: int, cap: int | None):
    cap = DEFAULT_SUBCUBE_CAP if cap is None else cap
    if n > cap:
        raise CapExceeded(f"subcube search refuses arity {n} > cap {cap}")


def _cells_by_point(f: BooleanFunction) -> list[list[tuple[int, int, int]]]:
    """For every point: (points bitmask, mask, values) of each f-constant cell containing it."""
    n = f.arity
    status = cell_status(f)
    out = []
    for x in range(f.size):
        cells = []
        for w in range(1 << n):
            if status[pattern_index(w, x & w, n)] != 2:
                cells.append((cell_points(w, x & w, n), w, x & w))
        out.append(cells)
    return out


def _point_weights(n: int, m: ProductMeasure) -> tuple[list[int], int]:
    """Integer weights proportional to pi_p, and their common denominator b**n."""
    a, b = m.scaled()
    w = [a ** popcount(x) * (b - a) ** (n - popcount(x)) for x in range(1 << n)]
    return w, b**n


class _CoverSearch:
    """Minimum weighted exact cover of a point set by f-constant cells."""

    def __init__(self, f: BooleanFunction, target: int, weights: list[int], scale: tuple[int, int]):
        self.n = n = f.arity
        self.wt = weights
        wf = pointwise_profile(f).w
        self.lb_point = [weights[x] * int(wf[x]) for x in range(f.size)]
        a, b = scale
        self.cells = []
        for cells in _cells_by_point(f):
            entries = []
            for pts, mask, vals in cells:
                k, ones = popcount(mask), popcount(vals)
                # cell mass times b**n, times the codimension
                cost = k * a**ones * (b - a) ** (k - ones) * b ** (n - k)
                entries.append((k, mask, pts, vals, cost, self.lower(pts)))
            # big cells first: cheap cover found early tightens the bound
            entries.sort()
            self.cells.append([(pts, mask, vals, cost, lb) for k, mask, pts, vals, cost, lb in entries])
        self.target = target
        self.memo: dict[int, tuple[int, bool]] = {}
        self.choice: dict[int, tuple[int, int, int]] = {}

    def lower(self, U: int) -> int:
        s = 0
        p = U
        while p:
            low = p & -p
            s += self.lb_point[low.bit_length() - 1]
            p ^= low
        return s

    def solve(self, U: int, budget: int, lb: int) -> int:
        """Exact optimum if it is < budget, otherwise some value >= budget.

        ``lb`` is the pointwise lower bound of U, passed down incrementally.
        """
        if U == 0:
            return 0
        hit = self.memo.get(U)
        if hit is not None:
            val, exact = hit
            if exact or val >= budget:
                return val
        if lb >= budget:
            self.memo[U] = (max(lb, hit[0] if hit else 0), False)
            return lb
        x = (U & -U).bit_length() - 1
        best = budget
        best_choice = None
        for pts, mask, vals, c, lbc in self.cells[x]:
            if pts & ~U:
                continue
            rest_lb = lb - lbc
            if c + rest_lb >= best:
                continue
            sub = self.solve(U & ~pts, best - c, rest_lb)
            if c + sub < best:
                best = c + sub
                best_choice = (pts, mask, vals)
        if best_choice is not None:
            self.memo[U] = (best, True)
            self.choice[U] = best_choice
        else:
            self.memo[U] = (max(budget, hit[0] if hit else 0), False)
        return best

    def optimum(self) -> tuple[int, SubcubePartition]:
        total = sum(self.wt[x] * self.n for x in range(len(self.wt)) if (self.target >> x) & 1) + 1
        val = self.solve(self.target, total, self.lower(self.target))
        cells = []
        U = self.target
        while U:
            pts, mask, vals = self.choice[U]
            cells.append(SubcubePattern(self.n, mask, vals))
            U &= ~pts
        return val, cells


def _level_set(f: BooleanFunction, value: int) -> int:
    t = f.bits
    return t if value else ((1 << f.size) - 1) & ~t


@dataclass(frozen=True)
class SubcubeOptimum:
    value: Fraction
    partition: SubcubePartition


def sc_dist_optimum(f: BooleanFunction, m: ProductMeasure, cap: int | None = None) -> SubcubeOptimum:
    _check_cap(f.arity, cap)
    w, denom = _point_weights(f.arity, m)
    total = 0
    cells: list[SubcubePattern] = []
    for v in (1, 0):
        val, part = _CoverSearch(f, _level_set(f, v), w, m.scaled()).optimum()
        total += val
        cells += part
    return SubcubeOptimum(Fraction(total, denom), cells)


def sc_dist(f: BooleanFunction, m: ProductMeasure, cap: int | None = None) -> Fraction:
    """Minimum expected codimension of a partition refining f."""
    return sc_dist_optimum(f, m, cap).value


def sc_conditional(f: BooleanFunction, m: ProductMeasure, value: int, cap: int | None = None) -> SubcubeOptimum:
    """Optimal partition of the level set f = value, cost conditional on f = value."""
    _check_cap(f.arity, cap)
    w, denom = _point_weights(f.arity, m)
    target = _level_set(f, value)
    mass = sum(w[x] for x in range(f.size) if (target >> x) & 1)
    if mass == 0:
        raise ValueError(f"level set f={value} has probability 0")
    val, part = _CoverSearch(f, target, w, m.scaled()).optimum()
    return SubcubeOptimum(Fraction(val, mass), part)


def top_coefficient_nonzero(f: BooleanFunction) -> bool:
    """deg f = n, i.e. ones of even and odd weight are not equally many."""
    par = np.array([popcount(i) & 1 for i in range(f.size)], dtype=np.int64)
    ones = f.table.astype(bool)
    return int(np.count_nonzero(ones & (par == 0))) != int(np.count_nonzero(ones & (par == 1)))


class _DetSearch:
    """Can a level set be covered by f-constant cells of codimension <= k?"""

    def __init__(self, f: BooleanFunction, k: int):
        cells = _cells_by_point(f)
        self.cells = [[c for c in cs if popcount(c[1]) <= k] for cs in cells]
        self.failed: set[int] = set()
        self.choice: dict[int, tuple[int, int, int]] = {}

    def feasible(self, U: int) -> bool:
        if U == 0:
            return True
        if U in self.failed:
            return False
        # most constrained point first
        best_opts = None
        p = U
        while p:
            low = p & -p
            p ^= low
            opts = [c for c in self.cells[low.bit_length() - 1] if not c[0] & ~U]
            if best_opts is None or len(opts) < len(best_opts):
                best_opts = opts
                if not opts:
                    break
        for c in best_opts:
            if self.feasible(U & ~c[0]):
                self.choice[U] = c
                return True
        self.failed.add(U)
        return False


def sc_det_optimum(f: BooleanFunction, cap: int | None = None) -> tuple[int, SubcubePartition | None]:
    """Optimal max codimension, with a witnessing partition when the search ran."""
    n = f.arity
    if f.is_constant():
        return 0, [SubcubePattern(n, 0, 0)]
    if top_coefficient_nonzero(f):
        # any partition gives a polynomial of degree <= its max codimension
        return n, None
    _check_cap(n, cap)
    from .pointwise import deterministic_measures

    k = max(deterministic_measures(f).w_D, degree(f))
    while True:
        search = _DetSearch(f, k)
        cells = []
        ok = True
        for v in (1, 0):
            U = _level_set(f, v)
            if not search.feasible(U):
                ok = False
                break
            while U:
                pts, mask, vals = search.choice[U]
                cells.append(SubcubePattern(n, mask, vals))
                U &= ~pts
        if ok:
            return k, cells
        k += 1


def sc_det(f: BooleanFunction, cap: int | None = None) -> int:
    return sc_det_optimum(f, cap)[0]
