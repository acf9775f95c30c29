"""Smoke tests for the python module: tiny end-to-end runs of the main
operations against hand-checked values."""

import pytest

import freshcast as fc


def test_generators_and_validation():
    s3 = fc.star(3)
    assert s3.n == 4
    assert s3.root == 0
    assert s3.is_tree

    assert fc.gap_subtree_sizes(8) == [4, 1, 1, 1, 1]
    assert fc.gap_tree(8).n == 9

    with pytest.raises(fc.FreshcastError):
        fc.Instance(2, 0, [])  # disconnected


def test_round_robin_latencies():
    s2 = fc.star(2)
    steps = [[(0, 1)], [(0, 2)]]
    trace = fc.simulate(s2, steps, 6, periodic=True)
    assert [row[1] for row in trace] == [0, 1, 2, 1, 2, 1, 2]

    assert fc.supremum_objective(s2, steps, kind="max") == fc.Rat(2)
    assert fc.supremum_objective(s2, steps, kind="avg") == fc.Rat(1)


def test_broadcast_and_oracle_agree():
    s3 = fc.star(3)
    result = fc.abt_greedy(s3)
    assert sorted(result.delays) == [0, 1, 2, 3]
    assert result.average == fc.Rat(6, 4)

    value, witness = fc.oracle_broadcast(s3, "abt")
    assert value == result.average
    assert fc.first_arrivals(s3, witness)[0] == 0


def test_transforms():
    p3 = fc.path(3)
    tour = fc.euler_tour_schedule(p3)
    assert len(tour) == 4

    relay = [[(0, 1)], [(1, 2)]]
    body = fc.maxrvc_from_broadcast(p3, relay)
    assert fc.supremum_objective(p3, body, kind="max") <= fc.Rat(4)

    gather = [[(1, 2)], [(0, 1)]]
    arrivals = fc.receive_times(p3, gather)
    out = fc.reverse_doubling(p3, gather, arrivals)
    informed = fc.first_arrivals(p3, out)
    assert all(t <= 4 * a for t, a in zip(informed[1:], arrivals[1:]))


def test_interleave_pipeline():
    cbt = fc.complete_binary_tree(2)
    stream = fc.avgrvc_from_abt(cbt)
    achieved, bound, ok = fc.clock_to_root_eval(cbt, stream, 400, 200)
    assert ok
    assert achieved <= bound


def test_tree40_pipeline():
    s3 = fc.star(3)
    result = fc.tree_avgrvc_approx(s3)
    achieved = fc.supremum_objective(s3, result.steps, kind="avg")
    assert achieved <= result.latency_bound

    opt, _ = fc.oracle_rvc(s3, "avg")
    assert achieved <= fc.Rat(40) * opt


def test_power_of_two_helpers():
    assert fc.pow2_tail_slack([2, 8]) == fc.Rat(3, 8)
    assert fc.pow2_half_partition([2, 4, 4]) == 1
    assert fc.pow2_half_partition([8, 8]) is None
    assert fc.regular_sequence([2, 4, 4]) == [0, 1, 0, 2]


def test_gap_lower_bound():
    g = fc.gap_tree(1024)
    assert float(fc.gap_lower_bound(g)) >= 6.25
