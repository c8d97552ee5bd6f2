"""The (p, kappa) partial-information query model at the uniform measure.

Each bit is in one of five states: unknown (U), coarse answer known (Z0, Z1)
or full answer known (X0, X1). A coarse question on a U bit costs kappa and
has answer 0 or 1 with probability 1/2 each. A full question on a Z bit
costs 1 - kappa and agrees with the coarse answer with probability p. The
value is determined only by bits in X states.

The cost of a strategy is alpha + beta * kappa where alpha is the expected
number of bits that end in X states and beta the expected number that end
in Z states. A direct 0/1 question is a coarse then a full question, with
total cost 1.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction

from .core import BooleanFunction, CapExceeded, ProductMeasure
from .cube import cell_status
from .dtree import dist_cost

PK_CAP = 10
U, Z0, Z1, X0, X1 = range(5)
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class KappaCostLine:
    alpha: Fraction
    beta: Fraction

    def at(self, kappa) -> Fraction:
        return self.alpha + self.beta * kappa


@dataclass(frozen=True)
class PkResult:
    value: Fraction
    line: KappaCostLine
    first_query: tuple[str, int] | None  # ("Z" or "X", 0-based bit)


def _check(f: BooleanFunction, p: Fraction, kappa: Fraction, cap: int | None):
    cap = PK_CAP if cap is None else cap
    if f.arity > cap:
        raise CapExceeded(f"partial-information DP refuses arity {f.arity} > cap {cap}")
    if not Fraction(1, 2) < p < 1:
        raise ValueError("p must lie strictly between 1/2 and 1")
    if not 0 <= kappa <= 1:
        raise ValueError("kappa must lie in [0, 1]")


def pk_solve(f: BooleanFunction, p, kappa, cap: int | None = None) -> PkResult:
    p, kappa = Fraction(p), Fraction(kappa)
    _check(f, p, kappa, cap)
    n = f.arity
    status = cell_status(f)
    pow5 = [5**i for i in range(n)]
    pow3 = [3**i for i in range(n)]
    q = 1 - p
    memo: dict[int, tuple[Fraction, Fraction, Fraction]] = {}
    first: dict[int, tuple[str, int]] = {}

    def rec(state: int, cell: int) -> tuple[Fraction, Fraction, Fraction]:
        # cell is the ternary index of the restriction fixed by X bits
        if status[cell] != 2:
            return (Fraction(0), Fraction(0), Fraction(0))
        hit = memo.get(state)
        if hit is not None:
            return hit
        best = None
        best_act = None
        for i in range(n):
            tag = (state // pow5[i]) % 5
            if tag == U:
                v0, a0, b0 = rec(state + Z0 * pow5[i], cell)
                v1, a1, b1 = rec(state + Z1 * pow5[i], cell)
                cand = (kappa + HALF * (v0 + v1), HALF * (b0 + b1) + 1, HALF * (a0 + a1))
                act = ("Z", i)
            elif tag in (Z0, Z1):
                z = tag - Z0
                base = state - tag * pow5[i]
                cbase = cell - 2 * pow3[i]
                # X = z with probability p
                vs, as_, bs = rec(base + (X0 + z) * pow5[i], cbase + z * pow3[i])
                vd, ad, bd = rec(base + (X0 + 1 - z) * pow5[i], cbase + (1 - z) * pow3[i])
                cand = (1 - kappa + p * vs + q * vd, p * bs + q * bd - 1, p * as_ + q * ad + 1)
                act = ("X", i)
            else:
                continue
            if best is None or cand[:2] < best[:2]:
                best, best_act = cand, act
        out = (best[0], best[2], best[1])  # (value, alpha, beta)
        memo[state] = out
        first[state] = best_act
        return out

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10000))
    try:
        v, a, b = rec(0, 3**n - 1)
    finally:
        sys.setrecursionlimit(old)
    return PkResult(v, KappaCostLine(a, b), first.get(0))


def pk_cost(f: BooleanFunction, p, kappa, cap: int | None = None) -> Fraction:
    """Optimal expected cost a_{p,kappa}(f, pi_1/2)."""
    return pk_solve(f, p, kappa, cap).value


def pk_strategy_line(f: BooleanFunction, p, kappa, cap: int | None = None) -> KappaCostLine:
    """(alpha, beta) of an optimal strategy; ties go to smaller beta, then lower bit."""
    return pk_solve(f, p, kappa, cap).line


def kappa_critical(f: BooleanFunction, p, cap: int | None = None) -> Fraction:
    """Least kappa with a_{p,kappa}(f) equal to the classical optimum.

    kappa -> a_{p,kappa} is a minimum of finitely many lines, bounded by a.
    From an optimal line below a, jump to where that line meets a; either the
    optimum there equals a (and the line shows it is below a before), or a
    new, lower line is active and the walk continues. Each step moves right.
    """
    p = Fraction(p)
    a = dist_cost(f, ProductMeasure(Fraction(1, 2)))
    kappa = Fraction(0)
    while True:
        r = pk_solve(f, p, kappa, cap)
        if r.value == a:
            return kappa
        line = r.line
        if line.beta <= 0:
            raise AssertionError("optimal line below the classical cost with no coarse bits")
        kappa = (a - line.alpha) / line.beta


def kappa0_bound(n: int, p) -> Fraction:
    """1 / (1 + (1/n) ((1 - p) / 2)^n)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    p = Fraction(p)
    return 1 / (1 + Fraction(1, n) * ((1 - p) / 2) ** n)
