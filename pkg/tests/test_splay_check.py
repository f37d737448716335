import random

import pytest
from hypothesis import given, settings, strategies as st

from analysis.errors import InvariantViolation
from analysis.interp import phi
from data_models.la_syntax import Num
from harness.splay_check import (
    HNode, check_invariants, check_one, check_splay, cross_check, fresh, from_la, host_insert,
    host_split, keys, okasaki_check, potential, random_tree, run_sequence, size_of, splay_bound,
    to_la,
)


def test_bound_for_a_single_node():
    assert splay_bound(1) == 3
    assert splay_bound(64) == 1 + 2 * phi(64)


@pytest.mark.parametrize("limit,cases", [(4, 30), (8, 420), (16, 6120)])
def test_rotation_inequality_holds(limit, cases):
    count, failures = okasaki_check(limit)
    assert count == cases
    assert failures == []


def test_random_trees_respect_invariants():
    rng = random.Random(11)
    for size in (1, 2, 7, 20):
        t = random_tree(size, rng)
        check_invariants(t)
        assert size_of(t) == size
        assert keys(t) == sorted(set(keys(t)))


@given(st.lists(st.integers(0, 60), min_size=1, max_size=15, unique=True), st.integers(0, 61))
@settings(max_examples=60, deadline=None)
def test_mirror_split_partitions_and_moves_potential(inserted, pivot):
    t = None
    for k in inserted:
        t = host_insert(k, t)
    small, big, n, r = host_split(pivot, t)
    check_invariants(small)
    check_invariants(big)
    assert all(k < pivot for k in keys(small))
    assert all(k >= pivot for k in keys(big))
    assert sorted(keys(small) + keys(big)) == sorted(inserted)
    assert r == potential(small) + potential(big) - potential(t)
    assert n + r <= splay_bound(size_of(t))


def test_bad_credit_is_reported_with_its_path():
    bad = HNode(4, phi(1) + 1, 1)
    t = HNode(2, phi(2), 2, None, bad)
    with pytest.raises(InvariantViolation) as excinfo:
        check_invariants(t)
    assert excinfo.value.path == "R"
    assert "credit" in excinfo.value.reason


def test_order_and_size_violations():
    with pytest.raises(InvariantViolation, match="not below"):
        check_invariants(fresh(2, fresh(5, None, None), None))
    with pytest.raises(InvariantViolation, match="cached size"):
        check_invariants(HNode(1, phi(3), 3))


def test_tree_values_convert_both_ways():
    t = random_tree(6, random.Random(2))
    assert from_la(to_la(t)) == t
    assert from_la(to_la(None)) is None
    with pytest.raises(InvariantViolation, match="not a tree value"):
        from_la(Num(3))


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_language_split_agrees_with_mirror(split_fn, seed):
    rng = random.Random(seed)
    t = random_tree(6, rng)
    for pivot in range(0, 26, 5):
        assert cross_check(split_fn, pivot, t) is None


def test_single_split_record(split_fn):
    t = random_tree(9, random.Random(4))
    record = check_one(split_fn, 0, t, pivot=keys(t)[4])
    assert record.verdict == "pass", record.detail
    assert record.invariants_ok
    assert record.bound == splay_bound(9)
    assert record.amortized <= record.bound
    assert record.r == record.output_potential - record.input_potential


def test_split_sequence_fits_accounted_bound(split_fn):
    result = run_sequence(split_fn, 6, random.Random(5))
    assert result.operations == 6
    assert result.verdict == "pass"
    assert result.total_ticks <= result.accounted_bound


def test_check_splay_small_run():
    report = check_splay(max_size=8, trials=4, seed=1, sequence_length=3, okasaki_limit=8)
    assert report.passed
    assert len(report.records) == 4
    assert report.okasaki_cases == 420
    assert report.sequence is not None
    assert list(report.record_frame().columns) == ["size", "n", "r", "bound", "verdict"]


def test_check_splay_is_deterministic():
    first = check_splay(max_size=5, trials=3, seed=9, sequence_length=2, okasaki_limit=4)
    second = check_splay(max_size=5, trials=3, seed=9, sequence_length=2, okasaki_limit=4)
    assert first.model_dump() == second.model_dump()
