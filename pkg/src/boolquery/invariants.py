"""Invariant suites: inequalities, identities and characterizations, checked
exhaustively on small arities and on seeded random samples.

Statuses: PASS / FAIL for asserted properties; FINDING when a probe of an
open question turns up a counterexample; INFO for observations that are
reported without being asserted.
"""

from __future__ import annotations

import time
from fractions import Fraction
from itertools import permutations

import numpy as np

from .core import (
    BooleanFunction,
    ProductMeasure,
    Restriction,
    all_functions,
    compose,
    degree,
    edge_boundary,
    evaluate,
    from_mobius,
    mobius_coefficients,
    monotone_functions,
    output_probability,
    restrict,
    xor_parity,
    zoo,
)

F = Fraction
HALF = ProductMeasure(F(1, 2))
THIRD = ProductMeasure(F(1, 3))


def _row(id, ok, detail="", status=None):
    return {"id": id, "status": status or ("PASS" if ok else "FAIL"), "detail": detail}


def _random_functions(rng, n, count):
    for _ in range(count):
        bits = int.from_bytes(rng.bytes((1 << n) // 8 + 1), "little") & ((1 << (1 << n)) - 1)
        yield BooleanFunction(n, bits)


def _fname(f):
    return f"n={f.arity} table={f.bits:#x}"


ZOO_SMALL = [
    ("AND2", zoo("AND", [2])),
    ("OR2", zoo("OR", [2])),
    ("PAR2", zoo("PAR", [2])),
    ("MAJ3", zoo("MAJ", [3])),
    ("AEQ3", zoo("AEQ3")),
    ("AND3", zoo("AND", [3])),
    ("ID", zoo("ID")),
]


def _pairs(max_arity):
    for nf, f in ZOO_SMALL:
        for ng, g in ZOO_SMALL:
            if f.arity * g.arity <= max_arity:
                yield f"{nf}o{ng}", f, g


def _canonical_classes(n):
    """One representative per class of n-bit functions under bit permutations and
    output negation (all measures used with this are invariant under both)."""
    seen = set()
    perms = list(permutations(range(n)))
    size = 1 << n
    maps = []
    for perm in perms:
        maps.append([sum(((x >> i) & 1) << perm[i] for i in range(n)) for x in range(size)])
    full = (1 << size) - 1
    for f in all_functions(n):
        if f.bits in seen:
            continue
        orbit = set()
        for mp in maps:
            b = 0
            for x in range(size):
                if (f.bits >> x) & 1:
                    b |= 1 << mp[x]
            orbit.add(b)
            orbit.add(full ^ b)
        seen |= orbit
        yield f


# ------------------------------------------------------------------ core


def suite_core(rng, level):
    rows = []
    ok, bad = True, ""
    nmax = 4 if level == "full" else 3
    for n in range(nmax + 1):
        for f in all_functions(n):
            back = from_mobius(n, mobius_coefficients(f))
            if not np.array_equal(back, f.table.astype(back.dtype)):
                ok, bad = False, _fname(f)
                break
    count = 1000 if level == "full" else 100
    for _ in range(count):
        n = int(rng.integers(1, 11))
        f = next(_random_functions(rng, n, 1))
        if not np.array_equal(from_mobius(n, mobius_coefficients(f)), f.table.astype(np.int64)):
            ok, bad = False, _fname(f)
    rows.append(_row("core/mobius-roundtrip", ok, bad or f"n<={nmax} exhaustive + {count} random n<=10"))

    ok, bad = True, ""
    for name, f, g in _pairs(12):
        for p in (F(1, 2), F(1, 3)):
            lhs = output_probability(compose(f, g), ProductMeasure(p))
            rhs = output_probability(f, ProductMeasure(output_probability(g, ProductMeasure(p))))
            if lhs != rhs:
                ok, bad = False, f"{name} p={p}: {lhs} != {rhs}"
    rows.append(_row("core/composition-output-probability", ok, bad))

    ok = all(
        output_probability(xor_parity(f, k), HALF) == F(1, 2) for _, f in ZOO_SMALL for k in (1, 2, 3)
    )
    rows.append(_row("core/xor-parity-balanced", ok))

    ok, bad = True, ""
    for f in (zoo("MAJ", [3]), zoo("AEQ3"), zoo("G4"), zoo("H4")):
        n = f.arity
        for assigned in range(1 << n):
            sub = assigned
            while True:
                r = Restriction(assigned, sub)
                g = restrict(f, r)
                free = r.free_bits(n)
                for y in range(1 << len(free)):
                    xf = [(y >> j) & 1 for j in range(len(free))]
                    if evaluate(g, xf) != f.at(r.merge(n, xf)):
                        ok, bad = False, f"{_fname(f)} r={assigned:b}/{sub:b}"
                if sub == 0:
                    break
                sub = (sub - 1) & assigned
    rows.append(_row("core/restrict-merge", ok, bad))
    return rows


# ------------------------------------------------------------- pointwise


def suite_pointwise(rng, level):
    from .pointwise import deterministic_measures, distributional_measures, pointwise_profile

    rows = []
    ok, bad = True, ""
    nmax = 4 if level == "full" else 3
    fs = [f for n in range(nmax + 1) for f in all_functions(n)]
    fs += list(_random_functions(rng, int(rng.integers(5, 9)), 10 if level == "fast" else 40))
    for f in fs:
        pr = pointwise_profile(f)
        if not ((pr.s <= pr.b).all() and (pr.b <= pr.w).all()):
            ok, bad = False, _fname(f)
            break
    rows.append(_row("pointwise/chain-s<=b<=w", ok, bad or f"{len(fs)} functions"))

    ok, bad = True, ""
    for f in fs[: 300 if level == "fast" else None]:
        for m in (HALF, THIRD):
            d = distributional_measures(f, m)
            if not d.s <= d.b <= d.w:
                ok, bad = False, f"{_fname(f)} p={m.p}"
    rows.append(_row("pointwise/distributional-chain", ok, bad))

    # s = b at p=1/3 exactly for parities on a subset (and their negations)
    parities = set()
    for S in range(8):
        f = BooleanFunction.from_callable(3, lambda x, S=S: sum(x[i] for i in range(3) if (S >> i) & 1) % 2)
        parities.add(f.bits)
        parities.add(f.negate().bits)
    ok, bad = True, ""
    for f in all_functions(3):
        d = distributional_measures(f, THIRD)
        if (d.s == d.b) != (f.bits in parities):
            ok, bad = False, _fname(f)
    rows.append(_row("pointwise/parity-characterization", ok, bad or "all 256 functions on 3 bits, p=1/3"))

    ok, bad = True, ""
    for n in range(5):
        for f in monotone_functions(n):
            dm = deterministic_measures(f)
            if not dm.s_D == dm.b_D == dm.w_D:
                ok, bad = False, _fname(f)
    rows.append(_row("pointwise/monotone-s=b=w", ok, bad or "all monotone n<=4"))
    return rows


# ----------------------------------------------------------------- dtree


def suite_dtree(rng, level):
    from .dtree import det_depth, dist_cost, extract_tree, osss_check
    from .localwit import local_witness_complexity
    from .pointwise import deterministic_measures, distributional_measures
    from .subcube import sc_dist

    rows = []
    ok, bad = True, ""
    zoo4 = [f for _, f in ZOO_SMALL] + [zoo("G4"), zoo("H4"), zoo("MAJ4"), zoo("TRIBES", [2, 2]), zoo("PAR", [4])]
    for f in zoo4:
        for m in (HALF, THIRD):
            a, sc = dist_cost(f, m), sc_dist(f, m)
            ell, w = local_witness_complexity(f, m), distributional_measures(f, m).w
            if not a >= sc >= ell >= w:
                ok, bad = False, f"{_fname(f)} p={m.p}: a={a} sc={sc} l={ell} w={w}"
    rows.append(_row("dtree/hierarchy-a>=sc>=l>=w", ok, bad))

    ok_det, ok_dist, ok_s, ok_b, bad = True, True, True, True, ""
    for name, f, g in _pairs(12):
        fg = compose(f, g)
        if det_depth(fg) != det_depth(f) * det_depth(g):
            ok_det, bad = False, name
        for p in (F(1, 2), F(1, 3)):
            m = ProductMeasure(p)
            mg = ProductMeasure(output_probability(g, m))
            if dist_cost(fg, m) > dist_cost(f, mg) * dist_cost(g, m):
                ok_dist, bad = False, f"{name} p={p}"
            if fg.arity <= 9:
                dfg, df, dg = distributional_measures(fg, m), distributional_measures(f, mg), distributional_measures(g, m)
                if dfg.s != df.s * dg.s:
                    ok_s, bad = False, f"{name} p={p}"
                if dfg.b < df.s * dg.b:
                    ok_b, bad = False, f"{name} p={p}"
    rows.append(_row("dtree/composition-aD-multiplicative", ok_det, bad))
    rows.append(_row("dtree/composition-a-submultiplicative", ok_dist, bad))
    rows.append(_row("dtree/composition-s-identity", ok_s, bad))
    rows.append(_row("dtree/composition-b-lower-bound", ok_b, bad))

    m2 = compose(zoo("MAJ", [3]), zoo("MAJ", [3]))
    a2 = dist_cost(m2, HALF)
    rows.append(_row("dtree/maj3-squared-strict", F(81, 16) <= a2 < F(25, 4), f"a = {a2}"))

    ok, bad = True, ""
    fs = [f for n in range(4) for f in all_functions(n)]
    sample = 60 if level == "fast" else 400
    fs += [f for f in _random_functions(rng, 4, sample)]
    if level == "fast":
        fs = fs[:120] + fs[-sample:]
    for f in fs:
        for m in (HALF, THIRD):
            r = osss_check(f, m, extract_tree(f, m))
            if not r.holds:
                ok, bad = False, f"{_fname(f)} p={m.p}: var={r.variance} bound={r.bound}"
    rows.append(_row("dtree/osss-optimal-tree", ok, bad or f"{len(fs)} functions"))

    ok, bad = True, ""
    for n in range(4 if level == "fast" else 5):
        for f in (all_functions(n) if n <= 3 else _random_functions(rng, n, 200)):
            dm = deterministic_measures(f)
            d, aD = degree(f), det_depth(f)
            if not (aD <= dm.w_D * dm.b_D and dm.w_D <= dm.b_D * dm.s_D and dm.b_D <= d * d and d <= dm.s_D**2):
                ok, bad = False, _fname(f)
    rows.append(_row("dtree/polynomial-relations", ok, bad))
    return rows


# ---------------------------------------------------------------- subcube


def _all_partitions(f: BooleanFunction):
    """Every partition of the cube into f-constant cells (small n only)."""
    from .cube import cell_points, cell_status, pattern_index

    n = f.arity
    status = cell_status(f)
    by_point = [[] for _ in range(f.size)]
    for mask in range(1 << n):
        vals = mask
        while True:
            if status[pattern_index(mask, vals, n)] != 2:
                pts = cell_points(mask, vals, n)
                by_point[(pts & -pts).bit_length() - 1].append((pts, mask, vals))
            if vals == 0:
                break
            vals = (vals - 1) & mask

    def rec(U, acc):
        if U == 0:
            yield list(acc)
            return
        x = (U & -U).bit_length() - 1
        for pts, mask, vals in by_point[x]:
            if pts & ~U == 0:
                acc.append((mask, vals))
                yield from rec(U & ~pts, acc)
                acc.pop()

    yield from rec((1 << f.size) - 1, [])


def suite_subcube(rng, level):
    from .dtree import dist_cost, extract_tree
    from .localwit import local_witness_complexity
    from .pointwise import distributional_measures
    from .subcube import (
        SubcubePattern,
        is_algorithm_induced,
        partition_boundary,
        sc_dist,
        tree_partition,
    )

    rows = []
    # gamma identity and boundary identity, all f on n <= 3
    ok_g, ok_b, bad = True, True, ""
    for n in range(1, 4):
        for f in all_functions(n):
            best = None
            for cells in _all_partitions(f):
                P = [SubcubePattern(n, mk, v) for mk, v in cells]
                bd = partition_boundary(P)
                if sum(c.codim << (n - c.codim) for c in P) != 2 * bd:
                    ok_b, bad = False, _fname(f)
                best = bd if best is None else min(best, bd)
            eb = edge_boundary(f)
            if eb == 0:
                continue
            sc, s = sc_dist(f, HALF), distributional_measures(f, HALF).s
            if sc / s != F(best, eb):
                ok_g, bad = False, f"{_fname(f)}: {sc / s} vs {F(best, eb)}"
    rows.append(_row("subcube/boundary-identity", ok_b, bad))
    rows.append(_row("subcube/gamma-identity", ok_g, bad or "all f on n<=3"))

    ok, bad = True, ""
    for f in [f for n in range(1, 5) for f in (all_functions(n) if n <= 3 else _random_functions(rng, 4, 30))]:
        P = tree_partition(extract_tree(f, HALF), f.arity)
        if not is_algorithm_induced(P):
            ok, bad = False, _fname(f)
    rows.append(_row("subcube/tree-partitions-algorithm-induced", ok, bad))

    mono = [f for n in range(1, 5) for f in monotone_functions(n) if not f.is_constant()]
    ok, bad = True, ""
    for f in mono:
        dict_ = f.ones_count() == f.size // 2 and any(
            all(f.at(x) == (x >> i) & 1 for x in range(f.size)) for i in range(f.arity)
        )
        eq_ = sc_dist(f, HALF) == distributional_measures(f, HALF).w
        if eq_ != dict_:
            ok, bad = False, _fname(f)
    rows.append(_row("subcube/dictator-characterization", ok, bad or f"{len(mono)} monotone functions"))

    ok = all(
        sc_dist(zoo("AND", [n]), ProductMeasure(p)) == dist_cost(zoo("AND", [n]), ProductMeasure(p))
        for n in range(1, 6)
        for p in (F(1, 4), F(1, 2))
    )
    rows.append(_row("subcube/and-sc=a", ok))

    # the LP is the slow part; fast level keeps it to n <= 3
    lp_mono = mono if level == "full" else [f for f in mono if f.arity <= 3]
    ell_half = {}
    ok_os, ok_osl, bad = True, True, ""
    for f in mono:
        for m in (HALF, THIRD):
            bound = 4 * m.p * (1 - m.p) * distributional_measures(f, m).s ** 2
            if sc_dist(f, m) < bound:
                ok_os, bad = False, f"{_fname(f)} p={m.p}"
            if f not in lp_mono:
                continue
            ell = local_witness_complexity(f, m)
            if m is HALF:
                ell_half[f] = ell
            if ell < bound:
                ok_osl, bad = False, f"{_fname(f)} p={m.p}"
    rows.append(_row("subcube/odonnell-servedio-sc", ok_os, bad))
    rows.append(_row("subcube/odonnell-servedio-l", ok_osl, bad))

    ok, bad = True, ""
    # 6-bit compositions take minutes each in the cover search at p=1/2
    for name, f, g in _pairs(4):
        for p in (F(1, 2), F(1, 3)):
            m = ProductMeasure(p)
            mg = ProductMeasure(output_probability(g, m))
            if sc_dist(compose(f, g), m) > sc_dist(f, mg) * sc_dist(g, m):
                ok, bad = False, f"{name} p={p}"
    rows.append(_row("subcube/composition-sc-submultiplicative", ok, bad))

    # open question probes
    found = []
    for f in mono:
        if dist_cost(f, HALF) != sc_dist(f, HALF):
            found.append(_fname(f))
    rows.append(
        _row(
            "probe/monotone-a=sc",
            True,
            "; ".join(found) if found else "no counterexample among monotone n<=4 at p=1/2",
            status="FINDING" if found else "PASS",
        )
    )
    found = [_fname(f) for f in lp_mono if sc_dist(f, HALF) > ell_half[f]]
    rows.append(
        _row(
            "probe/monotone-sc>l",
            True,
            f"{len(found)} of {len(lp_mono)} monotone with sc > l at p=1/2" + (": " + "; ".join(found[:5]) if found else ""),
            status="FINDING" if found else "INFO",
        )
    )
    return rows


# --------------------------------------------------------------- localwit


def suite_localwit(rng, level):
    from .localwit import build_program, local_witness_complexity, solve
    from .pointwise import distributional_measures
    from .subcube import sc_dist

    rows = []
    if level == "full":
        fs = [f for n in range(4) for f in all_functions(n)] + list(_canonical_classes(4))
        scope = "all n<=3 and all n=4 up to bit permutation and negation"
    else:
        fs = [f for n in range(3) for f in all_functions(n)] + list(_random_functions(rng, 3, 30))
        fs += list(_random_functions(rng, 4, 10))
        scope = f"{len(fs)} functions (n<=2 all, sampled n=3,4)"
    ok, bad = True, ""
    for f in fs:
        for m in (HALF, THIRD):
            w = distributional_measures(f, m).w
            ell = local_witness_complexity(f, m)
            if not w <= ell <= sc_dist(f, m):
                ok, bad = False, f"{_fname(f)} p={m.p}"
    rows.append(_row("localwit/sandwich-w<=l<=sc", ok, bad or scope))

    ok, bad = True, ""
    for name, f, g in _pairs(4):
        for p in (F(1, 2), F(1, 3)):
            m = ProductMeasure(p)
            mg = ProductMeasure(output_probability(g, m))
            if local_witness_complexity(compose(f, g), m) > local_witness_complexity(f, mg) * local_witness_complexity(g, m):
                ok, bad = False, f"{name} p={p}"
    rows.append(_row("localwit/composition-submultiplicative", ok, bad))

    g4 = zoo("G4")
    lg, sg = local_witness_complexity(g4, HALF), sc_dist(g4, HALF)
    rows.append(_row("localwit/g4-strict-separation", lg < sg == F(11, 4), f"l = {lg}, sc = {sg}"))

    ok = True
    for f in (zoo("MAJ", [3]), g4, zoo("TRIBES", [2, 2])):
        solve(build_program(f, HALF))  # raises on any certificate mismatch
    rows.append(_row("localwit/strong-duality", ok, "dual value equals primal, checked exactly"))

    mono = [f for n in range(1, 5) for f in monotone_functions(n) if not f.is_constant()]
    eq = [f for f in mono if local_witness_complexity(f, HALF) == distributional_measures(f, HALF).w]
    dicts = [f for f in eq if f.ones_count() * 2 == f.size and sum(1 for i in range(f.arity) if all(f.at(x) == (x >> i) & 1 for x in range(f.size)))]
    rows.append(
        _row(
            "probe/monotone-l=w-only-dictators",
            True,
            f"{len(eq)} monotone n<=4 with l = w at p=1/2, of which {len(dicts)} dictators",
            status="INFO",
        )
    )
    return rows


# ------------------------------------------------------------ partialinfo


def suite_partialinfo(rng, level):
    from .dtree import dist_cost
    from .partialinfo import kappa0_bound, kappa_critical, pk_solve
    from .pointwise import distributional_measures

    rows = []
    fs = [f for n in range(1, 4) for f in all_functions(n)]
    a_of = {(f.arity, f.bits): dist_cost(f, HALF) for f in fs}
    ok1, ok_thm, ok_beta, bad = True, True, True, ""
    ps = (F(2, 3), F(3, 4))
    for f in fs:
        a = a_of[(f.arity, f.bits)]
        for p in ps:
            if pk_solve(f, p, 1).value != a:
                ok1, bad = False, f"{_fname(f)} p={p}"
            if f.arity >= 2:
                k = kappa0_bound(f.arity, p) + F(1, 1000)
                if k > 1:
                    k = F(1)
                r = pk_solve(f, p, k)
                if r.value != a:
                    ok_thm, bad = False, f"{_fname(f)} p={p}"
                if r.line.beta != 0:
                    ok_beta, bad = False, f"{_fname(f)} p={p}"
    rows.append(_row("partial/kappa-1-classical", ok1, bad or "all f on n<=3"))
    rows.append(_row("partial/kappa0-bound", ok_thm, bad or "all f on n in {2,3}"))
    rows.append(_row("partial/beta-zero-above-kappa0", ok_beta, bad))

    grid = [F(k, 8) for k in range(9)]
    pgrid = [F(3, 5), F(2, 3), F(3, 4), F(9, 10)]
    sample = fs if level == "full" else [f for f in fs if f.arity <= 2] + list(_random_functions(rng, 3, 12))
    ok_mono, ok_conc, ok_impl, ok_sand, bad = True, True, True, True, ""
    for f in sample:
        a = a_of.get((f.arity, f.bits)) or dist_cost(f, HALF)
        w = distributional_measures(f, HALF).w
        table = {}
        for p in pgrid:
            vals = [pk_solve(f, p, k).value for k in grid]
            for k, v in zip(grid, vals):
                table[(p, k)] = v
                if not w <= v <= a:
                    ok_sand, bad = False, f"{_fname(f)} p={p} k={k}"
            if any(x > y for x, y in zip(vals, vals[1:])):
                ok_mono, bad = False, f"{_fname(f)} p={p}"
            if any(2 * vals[i] < vals[i - 1] + vals[i + 1] for i in range(1, len(vals) - 1)):
                ok_conc, bad = False, f"{_fname(f)} p={p}"
        for (p, k), v in table.items():
            if v != a:
                continue
            for (p2, k2), v2 in table.items():
                if p2 <= p and k2 >= k and v2 != a:
                    ok_impl, bad = False, f"{_fname(f)} ({p},{k}) -> ({p2},{k2})"
    rows.append(_row("partial/monotone-in-kappa", ok_mono, bad))
    rows.append(_row("partial/concave-in-kappa", ok_conc, bad))
    rows.append(_row("partial/critical-region-monotone", ok_impl, bad))
    rows.append(_row("partial/sandwich-w<=a_pk<=a", ok_sand, bad or f"{len(sample)} functions"))

    if level == "full":
        ok, bad = True, ""
        for f in _canonical_classes(4):
            a, w = dist_cost(f, HALF), distributional_measures(f, HALF).w
            for p in (F(2, 3), F(3, 4)):
                for k in (F(0), F(1, 4), F(1, 2)):
                    v = pk_solve(f, p, k).value
                    if not w <= v <= a:
                        ok, bad = False, f"{_fname(f)} p={p} k={k}"
        rows.append(_row("partial/sandwich-n4", ok, bad or "n=4 up to permutation and negation"))

    # probes of sup kappa_c = 2p - 1
    for p in ps:
        sym = [f for f in fs if _symmetric(f)]
        kc_sym = max(kappa_critical(f, p) for f in sym)
        kc_all = max(kappa_critical(f, p) for f in (fs if level == "full" else fs[:40]))
        rows.append(
            _row(
                f"probe/sup-kappa-c-p={p}",
                True,
                f"max over symmetric n<=3: {kc_sym}; over {'all' if level == 'full' else 'first 40'} n<=3: {kc_all}; 2p-1 = {2 * p - 1}",
                status="FINDING" if max(kc_sym, kc_all) > 2 * p - 1 else "INFO",
            )
        )
    return rows


def _symmetric(f: BooleanFunction) -> bool:
    from .core import popcount

    by_w = {}
    for x in range(f.size):
        if by_w.setdefault(popcount(x), f.at(x)) != f.at(x):
            return False
    return True


# ------------------------------------------------------------- percolation


def suite_percolation(rng, level, seed):
    from .percolation import Multigraph, grid_graph, mc_estimate, mc_values, perc_function, witness_at
    from .pointwise import block_sensitivity_at, distributional_measures
    from .subcube import sc_dist

    rows = []
    graphs = [grid_graph(1)]
    for _ in range(20):
        v = int(rng.integers(2, 6))
        e = int(rng.integers(1, 11))
        edges = [tuple(int(t) for t in rng.integers(0, v, 2)) for _ in range(e)]
        graphs.append(Multigraph.build(v, edges, [0], [v - 1]))
    ok, bad = True, ""
    for g in graphs:
        f = perc_function(g)
        for i in range(f.size):
            om = [(i >> k) & 1 for k in range(g.m)]
            if witness_at(g, om) != block_sensitivity_at(f, i):
                ok, bad = False, f"{g.dumps()} omega={om}"
                break
    rows.append(_row("perc/menger-w=b", ok, bad or "m=1 grid + 20 random multigraphs"))

    ok, bad = True, ""
    gadget = Multigraph.build(3, [(0, 1), (0, 1), (1, 2), (1, 2)], [0], [2])
    for name, f in (("AND2oOR2", perc_function(gadget)), ("TRIBES22", zoo("TRIBES", [2, 2])), ("grid1", perc_function(grid_graph(1)))):
        for p in (F(1, 3), F(1, 2)):
            m = ProductMeasure(p)
            d = distributional_measures(f, m)
            sc = sc_dist(f, m, cap=7)
            if not (sc > d.w == d.b > d.s):
                ok, bad = False, f"{name} p={p}: sc={sc} w={d.w} b={d.b} s={d.s}"
    rows.append(_row("perc/strict-chain-sc>w=b>s", ok, bad))

    ok, bad = True, ""
    mmax = 5 if level == "full" else 3
    for m in range(1, mmax + 1):
        vals = mc_values(grid_graph(m), 0.5, "witness", 500, seed)
        if vals.min() < m + 1:
            ok, bad = False, f"m={m}: min {vals.min()}"
    rows.append(_row("perc/pointwise-b>=m+1", ok, bad or f"m<={mmax}, 500 samples each"))

    g3 = grid_graph(3)
    e1 = mc_estimate(g3, 0.5, "crossing", 2000, seed, 1)
    e4 = mc_estimate(g3, 0.5, "crossing", 2000, seed, 4)
    rows.append(_row("perc/shard-invariance", e1 == e4, f"mean {e1.mean}"))

    s_half = mc_estimate(g3, 0.5, "sensitivity", 2000, seed).mean
    s_low = mc_estimate(g3, 0.25, "sensitivity", 2000, seed).mean
    rows.append(_row("perc/sensitivity-lower-off-critical", s_low < s_half, f"p=1/4: {s_low:.3f}, p=1/2: {s_half:.3f}"))
    return rows


# -------------------------------------------------------- ratio growth


def suite_ratios(rng, level):
    from .pointwise import distributional_measures
    from .core import iterate

    rows = []
    maj3 = zoo("MAJ", [3])
    seq = []
    for k in (1, 2):
        w = distributional_measures(iterate(maj3, k), HALF).w
        seq.append(F(9, 4) ** k / w)
    rows.append(_row("ratio/l-over-w-iterated-maj", seq[0] < seq[1], f"(9/4)^k / w: {[str(x) for x in seq]}"))

    seq = []
    for n in (3, 5, 7, 9, 11):
        d = distributional_measures(zoo("MAJ", [n]), HALF)
        seq.append(d.w / d.b)
    rows.append(_row("ratio/w-over-b-maj", all(x < y for x, y in zip(seq, seq[1:])), f"{[float(x) for x in seq]}"))

    seq = []
    for m in (1, 2):
        d = distributional_measures(zoo("TRIBES", [2**m, m]), HALF)
        seq.append(d.b / d.s)
    rows.append(_row("ratio/b-over-s-balanced-tribes", seq[0] < seq[1], f"{[str(x) for x in seq]}"))
    return rows


SUITES = ("core", "pointwise", "dtree", "subcube", "localwit", "partialinfo", "percolation", "ratios")


def run_suites(seed: int = 1, level: str = "fast", only=None) -> list[dict]:
    rows = []
    for name in SUITES:
        if only and name not in only:
            continue
        rng = np.random.default_rng([seed, SUITES.index(name)])
        t0 = time.perf_counter()
        if name == "percolation":
            out = suite_percolation(rng, level, seed)
        else:
            out = globals()[f"suite_{name}"](rng, level)
        dt = round(time.perf_counter() - t0, 2)
        for r in out:
            r["suite"] = name
            r["suite_seconds"] = dt
        rows.extend(out)
    return sorted(rows, key=lambda r: (SUITES.index(r["suite"]), r["id"]))
