"""Distributional local witness complexity as an exact linear program.

Reduction. Let q(J, y) = P[I = J, x = y] be the joint law of a random set I
and the input x. Locality says that given I = J and x|J, the bits outside J
are still i.i.d. Ber(p); equivalently q(J, z.w) = t(J, z) * pi(w) with
t(J, z) = P[I = J, x|J = z] and pi the product measure on the free bits.
The witness condition says t(J, z) > 0 only when f is constant on the cell
{x|J = z}. Finally x must have law pi:

    sum_J t(J, y|J) * pi(y|J^c) = pi(y)     for every input y,

and E|I| = sum |J| * t(J, z). Conversely any t >= 0 satisfying these rows
defines a local witness set by sampling (J, z) from t and completing x with
fresh Ber(p) bits. So the program below has value exactly l(f, pi_p).

At p in {0, 1} nothing changes: cells must still be f-constant, so the value
is the witness size at the single support point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .core import BooleanFunction, CapExceeded, ProductMeasure, popcount
from .cube import cell_status, pattern_index
from .lp import check_certificate, solve_equality_lp

DEFAULT_LP_CAP = 5


@dataclass(frozen=True)
class LocalWitnessProgram:
    n: int
    variables: list[tuple[int, int]]  # (J mask, z values on J), f constant on the cell
    A: list[list[Fraction]]  # one row per input y
    b: list[Fraction]
    c: list[Fraction]

    def dumps(self) -> str:
        """Plain equality-form listing for outside solvers."""
        out = [f"# local witness program, n={self.n}", "minimize"]
        name = [_var_name(J, z, self.n) for J, z in self.variables]
        out.append("  " + " + ".join(f"{c} {v}" for c, v in zip(self.c, name) if c))
        out.append("subject to")
        for y, (row, rhs) in enumerate(zip(self.A, self.b)):
            terms = " + ".join(f"{a} {name[j]}" for j, a in enumerate(row) if a)
            out.append(f"  y{y}: {terms} = {rhs}")
        out.append("all variables >= 0")
        return "\n".join(out) + "\n"


def _var_name(J: int, z: int, n: int) -> str:
    s = "".join("*" if not (J >> i) & 1 else str((z >> i) & 1) for i in range(n))
    return f"t[{s}]"


@dataclass(frozen=True)
class LPSolution:
    value: Fraction
    assignment: dict[tuple[int, int], Fraction]
    dual: list[Fraction]


def build_program(f: BooleanFunction, m: ProductMeasure, cap: int | None = None) -> LocalWitnessProgram:
    n = f.arity
    cap = DEFAULT_LP_CAP if cap is None else cap
    if n > cap:
        raise CapExceeded(f"local witness LP refuses arity {n} > cap {cap}")
    status = cell_status(f)
    variables = []
    for J in range(1 << n):
        z = J
        while True:
            # z runs over all subsets of J
            if status[pattern_index(J, z, n)] != 2:
                variables.append((J, z))
            if z == 0:
                break
            z = (z - 1) & J
    variables.sort()
    full = (1 << n) - 1
    A = [[Fraction(0)] * len(variables) for _ in range(1 << n)]
    for j, (J, z) in enumerate(variables):
        free = full & ~J
        nfree = n - popcount(J)
        w = free
        while True:
            ones = popcount(w)
            A[z | w][j] = m.weight(ones, nfree - ones)
            if w == 0:
                break
            w = (w - 1) & free
    b = [m.weight(popcount(y), n - popcount(y)) for y in range(1 << n)]
    c = [Fraction(popcount(J)) for J, _ in variables]
    return LocalWitnessProgram(n, variables, A, b, c)


def solve(prog: LocalWitnessProgram) -> LPSolution:
    res = solve_equality_lp(prog.c, prog.A, prog.b)
    check_certificate(prog.c, prog.A, prog.b, res)
    assignment = {prog.variables[j]: v for j, v in enumerate(res.x) if v}
    return LPSolution(res.value, assignment, res.dual)


def local_witness_complexity(f: BooleanFunction, m: ProductMeasure, cap: int | None = None) -> Fraction:
    return solve(build_program(f, m, cap)).value


# ------------------------------------------------------ explicit random sets


@dataclass(frozen=True)
class RandomWitnessSet:
    """A random set given by rules I_g(x), g drawn with probabilities ``mix``."""

    n: int
    rules: list[list[tuple[str, frozenset[int]]]]  # per g: (pattern over x, 1-based set)
    mix: list[Fraction]

    @classmethod
    def load(cls, path) -> "RandomWitnessSet":
        data = json.loads(Path(path).read_text())
        rules = [[(r["when"], frozenset(r["set"])) for r in comp["rules"]] for comp in data["components"]]
        mix = [Fraction(comp["weight"]) for comp in data["components"]]
        return cls(int(data["n"]), rules, mix)

    def set_for(self, g: int, x: int) -> int:
        """The set (bitmask) chosen by component g at input index x."""
        hits = [s for pat, s in self.rules[g] if _matches(pat, x)]
        if len(hits) != 1:
            raise ValueError(f"component {g}: {len(hits)} rules match input {x}")
        return sum(1 << (i - 1) for i in hits[0])


def _matches(pattern: str, x: int) -> bool:
    for i, ch in enumerate(pattern):
        if ch != "*" and int(ch) != (x >> i) & 1:
            return False
    return True


@dataclass(frozen=True)
class WitnessSetReport:
    expected_size: Fraction
    is_witness: bool
    is_local: bool
    component_sizes: list[Fraction]


def check_random_set(I: RandomWitnessSet, f: BooleanFunction, m: ProductMeasure) -> WitnessSetReport:
    """Expected size, witness property and locality, all by enumeration."""
    n = I.n
    if f.arity != n:
        raise ValueError("arity mismatch")
    status = cell_status(f)
    pts = m.point_masses(n)
    joint: dict[tuple[int, int], dict[int, Fraction]] = {}
    witness = True
    sizes = []
    for g, wg in enumerate(I.mix):
        size = Fraction(0)
        for x in range(1 << n):
            J = I.set_for(g, x)
            size += pts[x] * popcount(J)
            if status[pattern_index(J, x & J, n)] == 2:
                witness = False
            cell = joint.setdefault((J, x & J), {})
            cell[x] = cell.get(x, Fraction(0)) + wg * pts[x]
        sizes.append(size)
    expected = sum((wg * s for wg, s in zip(I.mix, sizes)), Fraction(0))
    # locality: q(J, z.w) must equal t(J, z) * pi(w) for every completion w
    local = True
    for (J, z), dist in joint.items():
        t = sum(dist.values(), Fraction(0))
        free = ((1 << n) - 1) & ~J
        nfree = n - popcount(J)
        w = free
        while True:
            ones = popcount(w)
            if dist.get(z | w, Fraction(0)) != t * m.weight(ones, nfree - ones):
                local = False
            if w == 0:
                break
            w = (w - 1) & free
    return WitnessSetReport(expected, witness, local, sizes)
