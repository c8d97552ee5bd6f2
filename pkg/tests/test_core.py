from fractions import Fraction as F
from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from boolquery.core import (
    CapExceeded,
    ProductMeasure,
    Restriction,
    compose,
    degree,
    dumps_truth_table,
    edge_boundary,
    evaluate,
    from_mobius,
    index_to_input,
    input_to_index,
    is_monotone,
    iterate,
    loads_truth_table,
    mobius_coefficients,
    monotone_functions,
    output_probability,
    restrict,
    xor_parity,
    zoo,
)

from conftest import functions, measures


def brute_probability(f, p):
    total = F(0)
    for x in product((0, 1), repeat=f.arity):
        if f(x):
            k = sum(x)
            total += p**k * (1 - p) ** (f.arity - k)
    return total


def brute_degree(f):
    # largest |S| with a nonzero coefficient, by inclusion-exclusion over subsets
    best = 0
    for S in range(f.size):
        c = sum((-1) ** bin(S ^ T).count("1") * f.at(T) for T in range(f.size) if T & ~S == 0)
        if c:
            best = max(best, bin(S).count("1"))
    return best


def test_indexing_low_bit_first():
    assert input_to_index((1, 0, 0)) == 1
    assert input_to_index((0, 0, 1)) == 4
    assert index_to_input(6, 3) == (0, 1, 1)


@pytest.mark.parametrize(
    "name,params,ones",
    [("AND", [3], 1), ("OR", [3], 7), ("PAR", [3], 4), ("MAJ", [3], 4), ("AEQ3", [], 2), ("MAJ4", [], 8)],
)
def test_zoo_counts(name, params, ones):
    assert zoo(name, params).ones_count() == ones


def test_maj3_table():
    f = zoo("MAJ", [3])
    for x in product((0, 1), repeat=3):
        assert f(x) == (sum(x) >= 2)


def test_tribes_is_or_of_ands():
    f = zoo("TRIBES", [2, 2])
    for x in product((0, 1), repeat=4):
        assert f(x) == ((x[0] and x[1]) or (x[2] and x[3]))


def test_address_reads_the_addressed_bit():
    f = zoo("ADDRESS", [2])
    assert f.arity == 6
    ones = 0
    for x in product((0, 1), repeat=6):
        if f(x):
            ones += 1
    assert ones == 32


@given(functions(max_n=5))
def test_truth_table_roundtrip(f):
    assert loads_truth_table(dumps_truth_table(f)) == f


@given(functions(max_n=5))
def test_mobius_roundtrip(f):
    assert np.array_equal(from_mobius(f.arity, mobius_coefficients(f)), f.table.astype(np.int64))


@given(functions(max_n=4))
def test_degree_matches_brute_force(f):
    assert degree(f) == brute_degree(f)


def test_parity_has_full_degree():
    assert degree(zoo("PAR", [5])) == 5
    assert degree(zoo("AND", [4])) == 4
    assert degree(zoo("MAJ", [3])) == 3


@given(functions(max_n=4), measures())
def test_output_probability_matches_brute_force(f, m):
    assert output_probability(f, m) == brute_probability(f, m.p)


@given(functions(min_n=1, max_n=3), functions(min_n=1, max_n=3), measures())
def test_composition_output_probability(f, g, m):
    inner = ProductMeasure(output_probability(g, m))
    assert output_probability(compose(f, g), m) == output_probability(f, inner)


def test_composition_block_layout():
    f, g = zoo("OR", [2]), zoo("AND", [2])
    fg = compose(f, g)
    for x in product((0, 1), repeat=4):
        assert fg(x) == f((g(x[0:2]), g(x[2:4])))


def test_iterate_is_repeated_composition():
    m = zoo("MAJ", [3])
    assert iterate(m, 2) == compose(m, m)


@given(functions(max_n=4), st.integers(1, 3))
def test_xor_parity_is_balanced(f, k):
    assert output_probability(xor_parity(f, k), ProductMeasure(F(1, 2))) == F(1, 2)


@given(functions(min_n=1, max_n=4), st.data())
def test_restrict_agrees_with_f(f, data):
    n = f.arity
    assigned = data.draw(st.integers(0, (1 << n) - 1))
    values = data.draw(st.integers(0, (1 << n) - 1)) & assigned
    r = Restriction(assigned, values)
    g = restrict(f, r)
    assert g.arity == n - bin(assigned).count("1")
    for y in range(g.size):
        ys = index_to_input(y, g.arity)
        assert evaluate(g, ys) == f.at(r.merge(n, ys))


def test_monotone_counts():
    # Dedekind numbers
    assert [len(monotone_functions(n)) for n in range(5)] == [2, 3, 6, 20, 168]
    assert all(is_monotone(f) for f in monotone_functions(3))


def test_edge_boundary_of_parity():
    assert edge_boundary(zoo("PAR", [3])) == 12
    assert edge_boundary(zoo("AND", [2])) == 2


def test_caps_refuse_before_building():
    with pytest.raises(CapExceeded):
        compose(zoo("MAJ", [3]), zoo("MAJ", [3]), cap=8)


def test_measure_rejects_out_of_range():
    with pytest.raises(ValueError):
        ProductMeasure(F(3, 2))


def test_bad_table_text():
    with pytest.raises(ValueError):
        loads_truth_table("3\nff")
