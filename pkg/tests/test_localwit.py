from fractions import Fraction as F
from importlib.resources import files

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog

from boolquery.core import CapExceeded, ProductMeasure, compose, output_probability, zoo
from boolquery.localwit import (
    RandomWitnessSet,
    build_program,
    check_random_set,
    local_witness_complexity,
    solve,
)
from boolquery.lp import Infeasible, check_certificate, solve_equality_lp
from boolquery.pointwise import distributional_measures
from boolquery.subcube import sc_dist

from conftest import functions, interior_measures

HALF = ProductMeasure(F(1, 2))
THIRD = ProductMeasure(F(1, 3))


def scipy_value(c, A, b):
    res = linprog(
        np.array(c, dtype=float),
        A_eq=np.array(A, dtype=float),
        b_eq=np.array(b, dtype=float),
        bounds=(0, None),
        method="highs",
    )
    return res


@st.composite
def feasible_lps(draw):
    m = draw(st.integers(1, 4))
    n = draw(st.integers(m, 6))
    A = [[F(draw(st.integers(-3, 3))) for _ in range(n)] for _ in range(m)]
    x = [F(draw(st.integers(0, 3))) for _ in range(n)]
    b = [sum(a * v for a, v in zip(row, x)) for row in A]
    # nonnegative costs keep the program bounded
    c = [F(draw(st.integers(0, 5))) for _ in range(n)]
    return c, A, b


@given(feasible_lps())
def test_simplex_against_scipy(lp):
    c, A, b = lp
    res = solve_equality_lp(c, A, b)
    check_certificate(c, A, b, res)
    ref = scipy_value(c, A, b)
    assert ref.status == 0
    assert abs(float(res.value) - ref.fun) < 1e-7


def test_infeasible_detected():
    with pytest.raises(Infeasible):
        solve_equality_lp([F(1), F(1)], [[F(1), F(1)]], [F(-1)])


def test_redundant_rows_are_dropped_and_priced():
    c = [F(1), F(2), F(0)]
    A = [[F(1), F(1), F(1)], [F(2), F(2), F(2)]]
    b = [F(1), F(2)]
    res = solve_equality_lp(c, A, b)
    check_certificate(c, A, b, res)
    assert res.value == 0


@given(functions(max_n=3), interior_measures)
def test_local_witness_against_scipy(f, m):
    prog = build_program(f, m)
    ref = scipy_value(prog.c, prog.A, prog.b)
    assert abs(float(local_witness_complexity(f, m)) - ref.fun) < 1e-7


@given(functions(max_n=3), interior_measures)
def test_sandwich(f, m):
    ell = local_witness_complexity(f, m)
    assert distributional_measures(f, m).w <= ell <= sc_dist(f, m)


@pytest.mark.parametrize("p", [F(1, 2), F(1, 3)])
def test_maj3_closed_form(p):
    assert local_witness_complexity(zoo("MAJ", [3]), ProductMeasure(p)) == 2 + 2 * p * (1 - p)


@pytest.mark.parametrize("p", [F(1, 2), F(1, 3)])
def test_aeq3_closed_form(p):
    assert local_witness_complexity(zoo("AEQ3"), ProductMeasure(p)) == 2 + p**3 + (1 - p) ** 3


def test_g4_between_w_and_sc():
    ell = local_witness_complexity(zoo("G4"), HALF)
    assert F(37, 16) <= ell <= F(21, 8) < F(11, 4)


def test_degenerate_measures():
    f = zoo("MAJ", [3])
    assert local_witness_complexity(f, ProductMeasure(0)) == 2
    assert local_witness_complexity(f, ProductMeasure(1)) == 2
    assert local_witness_complexity(zoo("CONST", [3, 0]), HALF) == 0
    assert local_witness_complexity(zoo("PAR", [3]), HALF) == 3


def test_dual_certificate_is_exact():
    sol = solve(build_program(zoo("TRIBES", [2, 2]), HALF))
    assert sol.value == F(21, 8)
    prog = build_program(zoo("TRIBES", [2, 2]), HALF)
    assert sum(y * b for y, b in zip(sol.dual, prog.b)) == sol.value


def test_fixture_random_set():
    I = RandomWitnessSet.load(files("boolquery") / "data" / "g4_local_witness.json")
    rep = check_random_set(I, zoo("G4"), HALF)
    assert rep.expected_size == F(21, 8)
    assert rep.is_witness and rep.is_local


def _load_rules(tmp_path, n, rules):
    import json

    path = tmp_path / "set.json"
    path.write_text(json.dumps({"n": n, "components": [{"weight": "1", "rules": rules}]}))
    return RandomWitnessSet.load(path)


def test_local_set_for_and2(tmp_path):
    # read bit 1, then bit 2 only when bit 1 is 1
    I = _load_rules(tmp_path, 2, [{"when": "0*", "set": [1]}, {"when": "1*", "set": [1, 2]}])
    rep = check_random_set(I, zoo("AND", [2]), HALF)
    assert rep.is_witness and rep.is_local
    assert rep.expected_size == F(3, 2)


def test_nonlocal_set_is_flagged(tmp_path):
    # reveal only bit 1 when both bits are 0: a witness, but the choice
    # leaks that the hidden bit 2 is 0
    rules = [{"when": "00", "set": [1]}, {"when": "10", "set": [1, 2]}, {"when": "*1", "set": [1, 2]}]
    rep = check_random_set(_load_rules(tmp_path, 2, rules), zoo("AND", [2]), HALF)
    assert rep.is_witness
    assert not rep.is_local
    assert rep.expected_size == F(7, 4)


def test_non_witness_is_flagged(tmp_path):
    I = _load_rules(tmp_path, 2, [{"when": "**", "set": [1]}])
    assert not check_random_set(I, zoo("AND", [2]), HALF).is_witness


def test_composition_submultiplicative():
    for f, g in ((zoo("AND", [2]), zoo("OR", [2])), (zoo("PAR", [2]), zoo("AND", [2]))):
        for m in (HALF, THIRD):
            inner = ProductMeasure(output_probability(g, m))
            assert local_witness_complexity(compose(f, g), m) <= local_witness_complexity(
                f, inner
            ) * local_witness_complexity(g, m)


def test_cap():
    with pytest.raises(CapExceeded):
        build_program(zoo("PAR", [6]), HALF)
