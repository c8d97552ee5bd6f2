from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from boolquery.core import ProductMeasure, zoo
from boolquery.pointwise import (
    block_sensitivity_at,
    deterministic_measures,
    distributional_measures,
    max_disjoint_blocks,
    min_hitting_set,
    minimal_sensitive_blocks,
    pointwise_profile,
    sensitivities,
    sensitivity_at,
    witness_size_at,
    witness_size_by_search,
)

from conftest import functions, measures


def oracle_block_sensitivity(f, x):
    """Largest family of disjoint sensitive blocks, by exhaustive search."""
    n = f.arity
    sensitive = [B for B in range(1, 1 << n) if f.at(x ^ B) != f.at(x)]

    def best(used, start):
        top = 0
        for k in range(start, len(sensitive)):
            B = sensitive[k]
            if B & used == 0:
                top = max(top, 1 + best(used | B, k + 1))
        return top

    return best(0, 0)


def oracle_witness(f, x):
    n = f.arity
    for k in range(n + 1):
        for S in combinations(range(n), k):
            mask = sum(1 << i for i in S)
            if all(f.at(y) == f.at(x) for y in range(f.size) if (y ^ x) & mask == 0):
                return k


@given(functions(max_n=4), st.data())
def test_pointwise_against_oracles(f, data):
    x = data.draw(st.integers(0, f.size - 1))
    assert sensitivity_at(f, x) == sum(f.at(x ^ (1 << i)) != f.at(x) for i in range(f.arity))
    assert block_sensitivity_at(f, x) == oracle_block_sensitivity(f, x)
    assert witness_size_at(f, x) == oracle_witness(f, x)
    assert witness_size_by_search(f, x) == oracle_witness(f, x)


@given(functions(max_n=5))
def test_profile_chain(f):
    pr = pointwise_profile(f)
    assert (pr.s <= pr.b).all() and (pr.b <= pr.w).all()
    assert (pr.s == sensitivities(f)).all()


@given(functions(min_n=1, max_n=4), st.data())
def test_minimal_blocks_are_minimal(f, data):
    x = data.draw(st.integers(0, f.size - 1))
    fam = minimal_sensitive_blocks(f, x)
    for B in fam.blocks:
        assert f.at(x ^ B) != f.at(x)
        sub = (B - 1) & B
        while sub:
            assert f.at(x ^ sub) == f.at(x)
            sub = (sub - 1) & B


@given(st.lists(st.integers(1, 63), min_size=1, max_size=8))
def test_packing_at_most_hitting(blocks):
    assert max_disjoint_blocks(blocks) <= min_hitting_set(blocks)


@pytest.mark.parametrize("p", [F(1, 2), F(1, 3)])
def test_maj3_closed_forms(p):
    d = distributional_measures(zoo("MAJ", [3]), ProductMeasure(p))
    q = 1 - p
    assert d.s == 2 - 2 * p**3 - 2 * q**3
    assert d.b == 2 - p**3 - q**3
    assert d.w == 2


@pytest.mark.parametrize("p", [F(1, 2), F(1, 3)])
def test_aeq3_closed_forms(p):
    d = distributional_measures(zoo("AEQ3"), ProductMeasure(p))
    assert d.b == d.w == 2 + p**3 + (1 - p) ** 3


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("p", [F(1, 3), F(1, 2), F(2, 3)])
def test_and_closed_forms(n, p):
    d = distributional_measures(zoo("AND", [n]), ProductMeasure(p))
    assert d.s == n * p ** (n - 1)
    assert d.b == d.w == n * p**n + (1 - p**n)


def test_nisan_deterministic():
    dm = deterministic_measures(zoo("NISAN", [8]))
    assert (dm.s_D, dm.b_D, dm.w_D) == (6, 6, 7)


def test_g4_values():
    d = distributional_measures(zoo("G4"), ProductMeasure(F(1, 2)))
    assert d.s == F(3, 2)
    assert d.w == F(37, 16)
    # at (0,0,0,1) the blocks {3}, {4}, {1,2} are disjoint and all sensitive
    g = zoo("G4")
    assert block_sensitivity_at(g, 0b1000) == 3


@given(functions(max_n=4), measures())
def test_distributional_chain(f, m):
    d = distributional_measures(f, m)
    assert d.s <= d.b <= d.w
