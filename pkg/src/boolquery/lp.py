"""Exact two-phase simplex over the rationals, equality form.

    minimise c.x  subject to  A x = b, x >= 0

Bland's rule (lowest-index entering column, lowest-index leaving row among
ties) rules out cycling, so the loop always terminates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class Infeasible(ValueError):
    pass


class Unbounded(ValueError):
    pass


@dataclass
class SimplexResult:
    value: Fraction
    x: list[Fraction]
    basis: list[int]  # basic column per kept row
    rows: list[int]  # indices of constraint rows kept (redundant rows dropped)
    dual: list[Fraction]  # one entry per original row


def _pivot(T: list[list[Fraction]], r: int, c: int):
    row = T[r]
    inv = 1 / row[c]
    if inv != 1:
        T[r] = row = [v * inv for v in row]
    for k, other in enumerate(T):
        if k != r and other[c]:
            f = other[c]
            T[k] = [a - f * b for a, b in zip(other, row)]


def _run(T, basis, obj_row, allowed):
    """Simplex iterations on tableau T; the objective row holds reduced costs."""
    last = len(T[0]) - 1
    while True:
        z = T[obj_row]
        enter = next((j for j in range(last) if allowed[j] and z[j] < 0), None)
        if enter is None:
            return
        best = None
        for i in range(len(T)):
            if i == obj_row or T[i][enter] <= 0:
                continue
            ratio = T[i][last] / T[i][enter]
            if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                best = (ratio, i)
        if best is None:
            raise Unbounded("objective unbounded below")
        r = best[1]
        _pivot(T, r, enter)
        basis[r] = enter


def solve_equality_lp(
    c: Sequence[Fraction], A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]
) -> SimplexResult:
    m, n = len(A), len(c)
    A = [[Fraction(v) for v in row] for row in A]
    b = [Fraction(v) for v in b]
    flipped = [bi < 0 for bi in b]
    for i in range(m):
        if flipped[i]:
            A[i] = [-v for v in A[i]]
            b[i] = -b[i]
    # columns: n structural, m artificial, rhs
    T = [A[i] + [Fraction(int(k == i)) for k in range(m)] + [b[i]] for i in range(m)]
    basis = list(range(n, n + m))
    # phase 1 objective: sum of artificials, expressed in nonbasic terms
    w = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        for j in range(n):
            w[j] -= T[i][j]
        w[-1] -= T[i][-1]
    T.append(w)
    allowed = [True] * (n + m)
    _run(T, basis, m, allowed)
    if T[m][-1] != 0:
        raise Infeasible("no feasible point")
    T.pop()
    # drive zero-level artificials out of the basis; drop rows that cannot be
    rows = list(range(m))
    i = 0
    while i < len(T):
        if basis[i] >= n:
            j = next((j for j in range(n) if T[i][j] != 0), None)
            if j is None:
                del T[i], basis[i], rows[i]
                continue
            _pivot(T, i, j)
            basis[i] = j
        i += 1
    # phase 2
    z = [Fraction(v) for v in c] + [Fraction(0)] * m + [Fraction(0)]
    for i, bj in enumerate(basis):
        if z[bj]:
            f = z[bj]
            z = [a - f * t for a, t in zip(z, T[i])]
    T.append(z)
    allowed = [True] * n + [False] * m
    _run(T, basis, len(T) - 1, allowed)
    x = [Fraction(0)] * n
    for i, bj in enumerate(basis):
        x[bj] = T[i][-1]
    value = sum((cj * xj for cj, xj in zip(c, x)), Fraction(0))
    # the artificial columns record the row operations M with T = M [A | b],
    # so y = c_B M prices every original row (dropped ones included)
    dual = []
    for r in range(m):
        y = sum((Fraction(c[bj]) * T[i][n + r] for i, bj in enumerate(basis)), Fraction(0))
        dual.append(-y if flipped[r] else y)
    return SimplexResult(value, x, basis, rows, dual)


def check_certificate(c, A, b, res: SimplexResult) -> None:
    """Exact re-check of primal feasibility, dual feasibility and strong duality."""
    m, n = len(A), len(c)
    for i in range(m):
        lhs = sum((A[i][j] * res.x[j] for j in range(n) if res.x[j]), Fraction(0))
        if lhs != b[i]:
            raise AssertionError(f"row {i} violated: {lhs} != {b[i]}")
    if any(v < 0 for v in res.x):
        raise AssertionError("negative primal variable")
    for j in range(n):
        red = c[j] - sum((res.dual[i] * A[i][j] for i in range(m) if A[i][j]), Fraction(0))
        if red < 0:
            raise AssertionError(f"dual infeasible at column {j}")
    dval = sum((yi * bi for yi, bi in zip(res.dual, b)), Fraction(0))
    if dval != res.value:
        raise AssertionError(f"duality gap: primal {res.value}, dual {dval}")
