"""Optimal decision trees over restrictions.

Both engines fill one value per restriction (3^n of them) with numpy. A
restriction with k free bits is swept k times; after pass t every restriction
with at most t free bits holds its final value.

Expected costs stay exact by scaling: with ``p = a/b`` the value of a
restriction with k free bits times ``b**k`` is an integer, and it obeys
``W = b**k + (b - a) * W0 + a * W1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .core import BooleanFunction, CapExceeded, ProductMeasure, Restriction
from .cube import bit_view, cell_status, free_counts, restriction_index

DEFAULT_DTREE_CAP = 16


def _check_cap(f: BooleanFunction, cap: int | None):
    cap = DEFAULT_DTREE_CAP if cap is None else cap
    if f.arity > cap:
        raise CapExceeded(f"decision-tree DP refuses arity {f.arity} > cap {cap}")


@dataclass(frozen=True)
class Leaf:
    value: int


@dataclass(frozen=True)
class Node:
    bit: int
    zero: "DecisionTree"
    one: "DecisionTree"


DecisionTree = Union[Leaf, Node]


class MemoTable:
    """Optimal value and best query for every restriction of one function."""

    def __init__(self, f: BooleanFunction, values: np.ndarray, scale: tuple[int, int] | None):
        self.f = f
        self.status = cell_status(f)
        self._values = values
        self._scale = scale  # None for worst-case depth

    def _raw(self, idx: int):
        return int(self._values[idx])

    def value_at(self, idx: int) -> Fraction:
        raw = self._raw(idx)
        if self._scale is None:
            return Fraction(raw)
        b = self._scale[1]
        k = int(free_counts(self.f.arity)[idx])
        return Fraction(raw, b**k)

    def value(self, r: Restriction) -> Fraction:
        return self.value_at(restriction_index(r, self.f.arity))

    def candidates(self, idx: int) -> list[tuple[int, int]]:
        """(raw value of querying bit i first, i) for each free bit i."""
        n = self.f.arity
        out = []
        for i in range(n):
            d = (idx // 3**i) % 3
            if d != 2:
                continue
            i0 = idx - 2 * 3**i
            v0, v1 = self._raw(i0), self._raw(i0 + 3**i)
            if self._scale is None:
                c = 1 + max(v0, v1)
            else:
                a, b = self._scale
                k = int(free_counts(n)[idx])
                c = b**k + (b - a) * v0 + a * v1
            out.append((c, i))
        return out

    def best_query_at(self, idx: int) -> int | None:
        if self.status[idx] != 2:
            return None
        cands = self.candidates(idx)
        best = min(c for c, _ in cands)
        return min(i for c, i in cands if c == best)

    def best_query(self, r: Restriction) -> int | None:
        return self.best_query_at(restriction_index(r, self.f.arity))


def _sweep(f: BooleanFunction, scale: tuple[int, int] | None) -> np.ndarray:
    n = f.arity
    status = cell_status(f)
    const = status != 2
    if scale is None:
        dtype = np.int64
        inf = np.iinfo(np.int64).max // 4
        powb = None
    else:
        a, b = scale
        big = (n + 1) * b**n
        dtype = np.int64 if big < 2**62 else object
        inf = 4 * big + 1
        powb = np.array([b**k for k in range(n + 1)], dtype=dtype)[free_counts(n)]
    vals = np.where(const, 0, inf).astype(dtype)
    for _ in range(n):
        best = np.full(vals.shape, inf, dtype=dtype)
        for i in range(n):
            v = bit_view(vals, i)
            v0, v1 = v[:, 0, :], v[:, 1, :]
            if scale is None:
                cand = 1 + np.maximum(v0, v1)
            else:
                pb = bit_view(powb, i)[:, 2, :]
                cand = pb + (b - a) * v0 + a * v1
            bv = bit_view(best, i)
            bv[:, 2, :] = np.minimum(bv[:, 2, :], cand)
        vals = np.where(const, 0, best)
    return vals


def memo_det(f: BooleanFunction, cap: int | None = None) -> MemoTable:
    _check_cap(f, cap)
    return MemoTable(f, _sweep(f, None), None)


def memo_dist(f: BooleanFunction, m: ProductMeasure, cap: int | None = None) -> MemoTable:
    _check_cap(f, cap)
    scale = m.scaled()
    return MemoTable(f, _sweep(f, scale), scale)


def _root(f: BooleanFunction) -> int:
    return 3**f.arity - 1


def det_depth(f: BooleanFunction, cap: int | None = None) -> int:
    """Minimax query depth of an optimal decision tree."""
    return int(memo_det(f, cap).value_at(_root(f)))


def dist_cost(f: BooleanFunction, m: ProductMeasure, cap: int | None = None) -> Fraction:
    """Minimum expected number of queries under m."""
    return memo_dist(f, m, cap).value_at(_root(f))


def _extract(table: MemoTable, idx: int) -> DecisionTree:
    st = table.status[idx]
    if st != 2:
        return Leaf(int(st))
    i = table.best_query_at(idx)
    i0 = idx - 2 * 3**i
    return Node(i, _extract(table, i0), _extract(table, i0 + 3**i))


def extract_tree(f: BooleanFunction, m: ProductMeasure | None = None, cap: int | None = None) -> DecisionTree:
    """An optimal tree (expected cost under m, or depth if m is None); ties go to the lowest bit."""
    table = memo_det(f, cap) if m is None else memo_dist(f, m, cap)
    return _extract(table, _root(f))


def _walk(t: DecisionTree, f: BooleanFunction, m: ProductMeasure, visit):
    """Traverse with exact path probabilities, checking every leaf against f."""
    n = f.arity
    status = cell_status(f)
    p = m.p

    def rec(node, mask, vals, prob):
        if isinstance(node, Leaf):
            from .cube import pattern_index

            st = status[pattern_index(mask, vals, n)]
            if st != node.value:
                raise ValueError(
                    f"tree does not decide f: leaf {node.value} on restriction "
                    f"mask={mask:b} values={vals:b}"
                )
            visit(None, mask, prob)
            return
        b = 1 << node.bit
        if node.bit >= n or mask & b:
            raise ValueError(f"tree queries bit {node.bit + 1} twice or out of range")
        visit(node.bit, mask, prob)
        rec(node.zero, mask | b, vals, prob * (1 - p))
        rec(node.one, mask | b, vals | b, prob * p)

    rec(t, 0, 0, Fraction(1))


def tree_cost(t: DecisionTree, f: BooleanFunction, m: ProductMeasure) -> Fraction:
    """Expected number of queries of ``t`` under m; raises if t does not decide f."""
    total = Fraction(0)

    def visit(bit, mask, prob):
        nonlocal total
        if bit is not None:
            total += prob

    _walk(t, f, m, visit)
    return total


def tree_depth(t: DecisionTree) -> int:
    if isinstance(t, Leaf):
        return 0
    return 1 + max(tree_depth(t.zero), tree_depth(t.one))


def revealment(t: DecisionTree, f: BooleanFunction, m: ProductMeasure) -> list[Fraction]:
    """Probability that each bit is queried before the tree reaches a leaf."""
    rev = [Fraction(0)] * f.arity

    def visit(bit, mask, prob):
        if bit is not None:
            rev[bit] += prob

    _walk(t, f, m, visit)
    return rev


def pivotal_probabilities(f: BooleanFunction, m: ProductMeasure) -> list[Fraction]:
    n = f.arity
    t = f.table
    idx = np.arange(f.size)
    out = []
    for i in range(n):
        piv = (t != t[idx ^ (1 << i)]).astype(np.int64)
        # P[i pivotal]: pivotality does not depend on x_i
        low = idx[(idx >> i) & 1 == 0]
        counts = [0] * n
        for x in low[piv[low] == 1].tolist():
            counts[bin(x).count("1")] += 1
        out.append(sum((c * m.weight(k, n - 1 - k) for k, c in enumerate(counts) if c), Fraction(0)))
    return out


@dataclass(frozen=True)
class OsssResult:
    holds: bool
    variance: Fraction
    bound: Fraction


def osss_check(f: BooleanFunction, m: ProductMeasure, t: DecisionTree) -> OsssResult:
    from .core import variance

    rev = revealment(t, f, m)
    piv = pivotal_probabilities(f, m)
    bound = 4 * m.p * (1 - m.p) * sum((r * q for r, q in zip(rev, piv)), Fraction(0))
    var = variance(f, m)
    return OsssResult(var <= bound, var, bound)


# ---------------------------------------------------------------- text form


def dumps_tree(t: DecisionTree) -> str:
    """``(i? zero : one)`` with 1-based bit i; leaves are ``=0`` / ``=1``."""
    if isinstance(t, Leaf):
        return f"={t.value}"
    return f"({t.bit + 1}? {dumps_tree(t.zero)} : {dumps_tree(t.one)})"


def loads_tree(text: str) -> DecisionTree:
    tokens = text.replace("(", " ( ").replace(")", " ) ").replace("?", " ? ").replace(":", " : ").split()
    pos = 0

    def parse():
        nonlocal pos
        tok = tokens[pos]
        if tok.startswith("="):
            pos += 1
            if tok not in ("=0", "=1"):
                raise ValueError(f"bad leaf {tok!r}")
            return Leaf(int(tok[1]))
        if tok != "(":
            raise ValueError(f"unexpected token {tok!r}")
        bit = int(tokens[pos + 1]) - 1
        if tokens[pos + 2] != "?":
            raise ValueError("expected '?'")
        pos += 3
        zero = parse()
        if tokens[pos] != ":":
            raise ValueError("expected ':'")
        pos += 1
        one = parse()
        if tokens[pos] != ")":
            raise ValueError("expected ')'")
        pos += 1
        return Node(bit, zero, one)

    try:
        tree = parse()
    except IndexError:
        raise ValueError(f"tree text ends early: {text!r}") from None
    if pos != len(tokens):
        raise ValueError("trailing input after tree")
    return tree


def complete_tree(n: int, f: BooleanFunction) -> DecisionTree:
    """Queries bits 1..n in order, stopping as soon as f is forced."""
    status = cell_status(f)
    from .cube import pattern_index

    def rec(i, mask, vals):
        st = status[pattern_index(mask, vals, n)]
        if st != 2:
            return Leaf(int(st))
        b = 1 << i
        return Node(i, rec(i + 1, mask | b, vals), rec(i + 1, mask | b, vals | b))

    return rec(0, 0, 0)
