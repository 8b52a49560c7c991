"""Integer max-flow core and residual-side cut extraction."""

import random

from sumsetlab.maxflow import FlowNetwork

from oracles import naive_min_cut


def build(n, edges):
    net = FlowNetwork(n)
    for u, v, c in edges:
        net.add_edge(u, v, c)
    return net


def test_two_path_network():
    # s=0, t=1; parallel 3-cap and 2-cap routes with tighter exits
    edges = [(0, 2, 3), (0, 3, 2), (2, 1, 2), (3, 1, 3)]
    assert build(4, edges).max_flow(0, 1) == 4


def test_classic_textbook_network():
    # well-known 6-vertex instance with maximum flow 23
    edges = [
        (0, 2, 16),
        (0, 3, 13),
        (2, 4, 12),
        (3, 2, 4),
        (3, 5, 14),
        (4, 3, 9),
        (4, 1, 20),
        (5, 4, 7),
        (5, 1, 4),
    ]
    assert build(6, edges).max_flow(0, 1) == 23


def test_zero_flow_when_disconnected():
    net = build(4, [(0, 2, 5), (3, 1, 5)])
    assert net.max_flow(0, 1) == 0


def test_residual_reaches_sink_on_saturated_path():
    net = build(3, [(0, 2, 2), (2, 1, 1)])
    assert net.max_flow(0, 1) == 1
    # only the sink itself can still reach the sink
    assert net.residual_reaches_sink(1) == {1}


def test_residual_separates_saturated_branch():
    # branch via 2 saturates at its exit; branch via 3 keeps slack
    net = build(4, [(0, 2, 5), (2, 1, 1), (0, 3, 1), (3, 1, 5)])
    assert net.max_flow(0, 1) == 2
    reach = net.residual_reaches_sink(1)
    assert 3 in reach and 1 in reach
    assert 2 not in reach and 0 not in reach


def test_bipartite_matching_as_flow():
    # 3x3 bipartite graph with a perfect matching
    left = [2, 3, 4]
    right = [5, 6, 7]
    pairs = [(2, 5), (2, 6), (3, 5), (4, 7)]
    net = FlowNetwork(8)
    for u in left:
        net.add_edge(0, u, 1)
    for v in right:
        net.add_edge(v, 1, 1)
    for u, v in pairs:
        net.add_edge(u, v, 1)
    assert net.max_flow(0, 1) == 3


def test_max_flow_equals_min_cut_random():
    rng = random.Random("maxflow:oracle")
    for _ in range(150):
        n = rng.randint(2, 6)
        edges = []
        for u in range(n):
            for v in range(n):
                if u != v and v != 0 and u != 1 and rng.random() < 0.45:
                    edges.append((u, v, rng.randint(0, 5)))
        flow = build(n, edges).max_flow(0, 1)
        assert flow == naive_min_cut(n, edges, 0, 1)


def test_residual_cut_is_minimum_random():
    rng = random.Random("maxflow:cut")
    for _ in range(100):
        n = rng.randint(2, 6)
        edges = []
        for u in range(n):
            for v in range(n):
                if u != v and v != 0 and u != 1 and rng.random() < 0.45:
                    edges.append((u, v, rng.randint(0, 5)))
        net = build(n, edges)
        flow = net.max_flow(0, 1)
        reach = net.residual_reaches_sink(1)
        assert 1 in reach
        assert 0 not in reach or flow == 0
        if 0 in reach:
            continue
        # complement of the reaching side is a source-side cut of value = flow
        cut = sum(c for u, v, c in edges if u not in reach and v in reach)
        assert cut == flow
