"""Tight-set peeling partitions and their re-verification."""

from fractions import Fraction

from sumsetlab import (
    GroupSpace,
    GSet,
    LayeredGraph,
    PartitionBlock,
    PartitionResult,
    build_addition_graph,
    channel,
    example1,
    image,
    partition_graph,
    partition_to_json,
    verify_partition,
)
from sumsetlab.instances import random_pair, rng_for

Z = GroupSpace((0,))


def gs(*coords):
    return GSet.from_coords(Z, [(c,) for c in coords])


def labels(graph, vertices):
    return {graph.label_of(v)[0] for v in vertices}


def test_group_graph_is_one_tight_block():
    space = GroupSpace((4,))
    a = GSet.from_coords(space, [(i,) for i in range(4)])
    b = GSet.from_coords(space, [(1,)])
    part = partition_graph(build_addition_graph(a, b, 2))
    assert part.k == 1
    assert part.ratios == (Fraction(1),)
    assert part.blocks[0].vertices == part.graph.layers[0]
    assert verify_partition(part).ok


def test_outlier_peels_into_second_block():
    g = build_addition_graph(gs(0, 1, 2, 3, 100), gs(0, 1), 2)
    part = partition_graph(g)
    assert part.k == 2
    assert part.ratios == (Fraction(5, 4), Fraction(2))
    assert labels(g, part.blocks[0].vertices) == {0, 1, 2, 3}
    assert labels(g, part.blocks[1].vertices) == {100}
    check = verify_partition(part)
    assert check.ok
    # block subgraph tops partition V_2: 6 + 3 = 9
    assert g.layer_sizes()[2] == 9


def test_grid_construction_partition_frozen():
    a, b, _ = example1(2, 4, 1)
    part = partition_graph(build_addition_graph(a, b, 2))
    assert part.ratios == (Fraction(1), Fraction(7))
    assert tuple(len(blk.vertices) for blk in part.blocks) == (16, 2)
    assert verify_partition(part).ok


def test_partition_is_deterministic():
    g = build_addition_graph(gs(0, 1, 2, 3, 100), gs(0, 1), 2)
    assert partition_graph(g) == partition_graph(g)


def test_stranded_vertex_becomes_degenerate_block():
    g = LayeredGraph(1, ((0, 1), (2,)), ((0, 2),))
    part = partition_graph(g)
    assert part.k == 2
    first, second = part.blocks
    assert first.degenerate
    assert first.vertices == (1,)
    assert first.ratio == 0
    assert not second.degenerate
    assert second.vertices == (0,)
    assert second.ratio == 1
    assert verify_partition(part).ok


def test_json_shape():
    g = build_addition_graph(gs(0, 1, 2, 3, 100), gs(0, 1), 1)
    doc = partition_to_json(partition_graph(g))
    assert doc["ratios"] == [[5, 4], [2, 1]]
    assert sorted(v for blk in doc["blocks"] for v in blk) == list(g.layers[0])


def test_dropped_vertex_fails_coverage():
    g = build_addition_graph(gs(0, 1, 2, 3, 100), gs(0, 1), 1)
    part = partition_graph(g)
    blk = part.blocks[0]
    tampered = PartitionResult(
        g,
        (
            PartitionBlock(0, blk.vertices[1:], blk.ratio, blk.subgraph, False),
            part.blocks[1],
        ),
    )
    assert not verify_partition(tampered).disjoint_cover
    assert not verify_partition(tampered).ok


def test_merged_equal_blocks_fail_strict_increase():
    # two far-apart copies of the same interval really form one tight class;
    # a partition presenting them as two blocks passes every local check but
    # the ratio chain stays flat
    g = build_addition_graph(gs(0, 1, 2, 3, 100, 101, 102, 103), gs(0, 1), 1)
    low = [v for v in g.layers[0] if g.label_of(v)[0] < 100]
    high = [v for v in g.layers[0] if g.label_of(v)[0] >= 100]
    blocks = []
    for idx, verts in enumerate((low, high)):
        top = image(g, set(verts), 1)
        sub = channel(g, set(verts), top)
        blocks.append(PartitionBlock(idx, tuple(verts), Fraction(5, 4), sub, False))
    tampered = PartitionResult(g, tuple(blocks))
    check = verify_partition(tampered)
    assert check.disjoint_cover
    assert check.blocks_tight
    assert check.subgraphs_disjoint
    assert check.top_accounted
    assert not check.ratios_increasing
    assert not check.ok


def test_wrong_ratio_fails_tightness():
    g = build_addition_graph(gs(0, 1, 2, 3, 100), gs(0, 1), 1)
    part = partition_graph(g)
    blk = part.blocks[1]
    tampered = PartitionResult(
        g,
        (
            part.blocks[0],
            PartitionBlock(1, blk.vertices, Fraction(3), blk.subgraph, False),
        ),
    )
    assert not verify_partition(tampered).blocks_tight


def test_random_partitions_verify():
    rng = rng_for(20260814, "partition")
    for _ in range(80):
        a, b = random_pair(rng, a_hi=7, b_hi=3)
        h = rng.randint(1, 3)
        part = partition_graph(build_addition_graph(a, b, h))
        check = verify_partition(part)
        assert check.ok, check
        assert 1 <= part.k <= len(a)
