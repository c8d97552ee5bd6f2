from fractions import Fraction as F
from functools import lru_cache

import pytest
from hypothesis import given

from boolquery.core import CapExceeded, ProductMeasure, compose, output_probability, zoo
from boolquery.dtree import (
    complete_tree,
    det_depth,
    dist_cost,
    dumps_tree,
    extract_tree,
    loads_tree,
    osss_check,
    revealment,
    tree_cost,
    tree_depth,
)

from conftest import functions, interior_measures, measures

HALF = ProductMeasure(F(1, 2))


def oracle_costs(f, m):
    """Plain recursion over restrictions: (depth, expected cost)."""
    n = f.arity
    p = m.p

    @lru_cache(maxsize=None)
    def go(mask, vals):
        pts = [x for x in range(f.size) if x & mask == vals]
        if len({f.at(x) for x in pts}) == 1:
            return 0, F(0)
        best_d, best_c = None, None
        for i in range(n):
            if mask >> i & 1:
                continue
            d0, c0 = go(mask | 1 << i, vals)
            d1, c1 = go(mask | 1 << i, vals | 1 << i)
            d, c = 1 + max(d0, d1), 1 + (1 - p) * c0 + p * c1
            best_d = d if best_d is None else min(best_d, d)
            best_c = c if best_c is None else min(best_c, c)
        return best_d, best_c

    return go(0, 0)


@given(functions(max_n=4), measures())
def test_against_plain_recursion(f, m):
    d, c = oracle_costs(f, m)
    assert det_depth(f) == d
    assert dist_cost(f, m) == c


@given(functions(max_n=4), interior_measures)
def test_extracted_tree_attains_optimum(f, m):
    t = extract_tree(f, m)
    assert tree_cost(t, f, m) == dist_cost(f, m)
    assert tree_depth(extract_tree(f)) == det_depth(f)


@given(functions(max_n=4), interior_measures)
def test_osss_on_optimal_trees(f, m):
    assert osss_check(f, m, extract_tree(f, m)).holds


@given(functions(max_n=4))
def test_tree_text_roundtrip(f):
    t = extract_tree(f, HALF)
    assert loads_tree(dumps_tree(t)) == t


@pytest.mark.parametrize(
    "name,params,value",
    [("MAJ", [3], F(5, 2)), ("AND", [3], F(7, 4)), ("G4", [], F(11, 4)), ("H4", [], F(3)), ("ADDRESS", [2], F(3))],
)
def test_known_costs(name, params, value):
    assert dist_cost(zoo(name, params), HALF) == value


@pytest.mark.parametrize("p", [F(1, 2), F(1, 3)])
def test_maj3_and_aeq3_closed_forms(p):
    m = ProductMeasure(p)
    assert dist_cost(zoo("MAJ", [3]), m) == 2 + 2 * p * (1 - p)
    assert dist_cost(zoo("AEQ3"), m) == 2 + p**2 + (1 - p) ** 2


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("p", [F(1, 3), F(1, 2), F(2, 3)])
def test_and_closed_form(n, p):
    assert dist_cost(zoo("AND", [n]), ProductMeasure(p)) == (1 - p**n) / (1 - p)


def test_deterministic_depths():
    assert det_depth(zoo("NISAN", [8])) == 8
    assert det_depth(zoo("MAJ4")) == 4
    assert det_depth(zoo("TRIBES", [2, 2])) == 4


def test_and2_tree_and_revealment():
    f = zoo("AND", [2])
    t = extract_tree(f, HALF)
    assert dumps_tree(t) == "(1? =0 : (2? =0 : =1))"
    assert revealment(t, f, HALF) == [F(1), F(1, 2)]


def test_complete_tree_costs_n():
    f = zoo("PAR", [3])
    t = complete_tree(3, f)
    assert tree_cost(t, f, HALF) == 3


def test_maj3_squared_strictly_below_square():
    a = dist_cost(compose(zoo("MAJ", [3]), zoo("MAJ", [3])), HALF)
    assert F(81, 16) <= a < F(25, 4)


def test_composition_submultiplicative():
    f, g = zoo("OR", [2]), zoo("AEQ3")
    for p in (F(1, 2), F(1, 3)):
        m = ProductMeasure(p)
        inner = ProductMeasure(output_probability(g, m))
        assert dist_cost(compose(f, g), m) <= dist_cost(f, inner) * dist_cost(g, m)


def test_cap():
    with pytest.raises(CapExceeded):
        dist_cost(zoo("PAR", [5]), HALF, cap=4)


def test_malformed_tree_text():
    with pytest.raises(ValueError):
        loads_tree("(1? =0 :")
