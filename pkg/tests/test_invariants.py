import time

import pytest

from boolquery.invariants import SUITES, _canonical_classes, run_suites


@pytest.fixture(scope="module")
def fast_rows():
    t0 = time.perf_counter()
    rows = run_suites(seed=1, level="fast")
    return rows, time.perf_counter() - t0


def test_fast_level_passes_within_a_minute(fast_rows):
    rows, seconds = fast_rows
    fails = [r for r in rows if r["status"] == "FAIL"]
    assert not fails, fails
    assert seconds < 60
    assert {r["suite"] for r in rows} == set(SUITES)


def test_statuses_are_known(fast_rows):
    rows, _ = fast_rows
    assert {r["status"] for r in rows} <= {"PASS", "FAIL", "FINDING", "INFO"}
    ids = [r["id"] for r in rows]
    assert len(ids) == len(set(ids))


def test_rows_are_sorted_deterministically(fast_rows):
    rows, _ = fast_rows
    keys = [(SUITES.index(r["suite"]), r["id"]) for r in rows]
    assert keys == sorted(keys)


def test_same_seed_same_rows():
    a = run_suites(seed=3, level="fast", only=["core", "pointwise"])
    b = run_suites(seed=3, level="fast", only=["core", "pointwise"])
    strip = lambda rows: [(r["id"], r["status"], r["detail"]) for r in rows]
    assert strip(a) == strip(b)


def test_class_representatives_cover_all_three_bit_functions():
    # 256 functions on 3 bits fall into 40 classes under permutation and negation
    assert len(list(_canonical_classes(3))) == 40
    assert len(list(_canonical_classes(2))) == 6
