from fractions import Fraction as F
from functools import lru_cache

import pytest
from hypothesis import given
from hypothesis import strategies as st

from boolquery.core import CapExceeded, ProductMeasure, all_functions, zoo
from boolquery.dtree import dist_cost
from boolquery.partialinfo import kappa0_bound, kappa_critical, pk_cost, pk_solve

from conftest import functions

HALF = ProductMeasure(F(1, 2))
ps = st.sampled_from([F(3, 5), F(2, 3), F(3, 4), F(9, 10)])
kappas = st.integers(0, 12).map(lambda k: F(k, 12))


def oracle(f, p, kappa):
    """Game over tuples of per-bit knowledge: None, ('z', v) or ('x', v)."""
    n = f.arity

    def determined(state):
        vals = {
            f.at(y)
            for y in range(f.size)
            if all(s is None or s[0] != "x" or (y >> i) & 1 == s[1] for i, s in enumerate(state))
        }
        return len(vals) == 1

    @lru_cache(maxsize=None)
    def go(state):
        if determined(state):
            return F(0)
        best = None
        for i, s in enumerate(state):
            if s is None:
                nxt = [state[:i] + (("z", v),) + state[i + 1 :] for v in (0, 1)]
                c = kappa + (go(nxt[0]) + go(nxt[1])) / 2
            elif s[0] == "z":
                same = state[:i] + (("x", s[1]),) + state[i + 1 :]
                diff = state[:i] + (("x", 1 - s[1]),) + state[i + 1 :]
                c = 1 - kappa + p * go(same) + (1 - p) * go(diff)
            else:
                continue
            best = c if best is None else min(best, c)
        return best

    return go((None,) * n)


@given(functions(max_n=3), ps, kappas)
def test_against_tuple_game(f, p, kappa):
    r = pk_solve(f, p, kappa)
    assert r.value == oracle(f, p, kappa)
    assert r.line.at(kappa) == r.value


@given(functions(max_n=3), ps)
def test_kappa_one_is_classical(f, p):
    assert pk_cost(f, p, 1) == dist_cost(f, HALF)


@given(functions(max_n=3), ps)
def test_monotone_concave_and_bounded(f, p):
    grid = [F(k, 6) for k in range(7)]
    vals = [pk_cost(f, p, k) for k in grid]
    a = dist_cost(f, HALF)
    assert all(x <= y for x, y in zip(vals, vals[1:]))
    assert all(2 * vals[i] >= vals[i - 1] + vals[i + 1] for i in range(1, 6))
    assert all(v <= a for v in vals)


@given(functions(max_n=3), ps)
def test_critical_kappa_is_least(f, p):
    kc = kappa_critical(f, p)
    a = dist_cost(f, HALF)
    assert pk_cost(f, p, kc) == a
    if kc > 0:
        assert pk_cost(f, p, kc - F(1, 10**6)) < a


@pytest.mark.parametrize("p", [F(2, 3), F(3, 4)])
def test_and2_critical_and_formula(p):
    f = zoo("AND", [2])
    assert kappa_critical(f, p) == 2 * p - 1
    for k in (F(0), F(1, 10), (2 * p - 1) / 2):
        assert pk_cost(f, p, k) == F(3, 2) + (k - 2 * p + 1) / 4


def test_parity_never_benefits():
    assert kappa_critical(zoo("PAR", [3]), F(3, 4)) == 0


def test_kappa0_bound_value():
    assert kappa0_bound(2, F(3, 4)) == F(128, 129)


@pytest.mark.parametrize("p", [F(2, 3), F(3, 4)])
def test_above_kappa0_is_classical_for_all_two_bit_functions(p):
    k = kappa0_bound(2, p) + F(1, 1000)
    for f in all_functions(2):
        r = pk_solve(f, p, min(k, F(1)))
        assert r.value == dist_cost(f, HALF)
        assert r.line.beta == 0


def test_bad_parameters():
    f = zoo("AND", [2])
    with pytest.raises(ValueError):
        pk_cost(f, F(1, 2), F(1, 2))
    with pytest.raises(ValueError):
        pk_cost(f, F(3, 4), F(3, 2))
    with pytest.raises(CapExceeded):
        pk_cost(zoo("PAR", [11]), F(3, 4), F(1, 2))
