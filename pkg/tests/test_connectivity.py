import itertools
import random

import pytest

from helpers import embed, lambda_by_enumeration, random_pairs
from layersec.connectivity import (
    _max_flow_unit,
    edge_connectivity_pairs,
    is_connected,
    is_p_resistant,
    link_connectivity,
    min_edge_cut,
)
from layersec.construction import build_harary
from layersec.graph import GraphError, remove_edges


def cycle_graph(n1, n2):
    n = n1 + n2
    return embed(n1, n2, [(i, (i + 1) % n) for i in range(n)])


def test_is_connected_basics():
    assert not is_connected(embed(2, 2, []))
    assert is_connected(cycle_graph(2, 2))


def test_link_connectivity_examples():
    for n1, n2 in ((2, 2), (3, 2), (3, 3)):
        assert link_connectivity(cycle_graph(n1, n2)).p == 1
    # tree: any bridge removal disconnects
    tree = embed(2, 2, [(0, 2), (2, 1), (1, 3)])
    assert link_connectivity(tree).p == 0
    assert link_connectivity(embed(3, 3, [])).p == -1


def test_harary_connectivity_small():
    for n in range(4, 9):
        for r in range(2, n):
            pairs = build_harary(n, r)
            assert edge_connectivity_pairs(n, pairs) == r


def test_min_edge_cut_cycle_and_star():
    g = cycle_graph(2, 2)
    cut = min_edge_cut(g)
    assert cut.size == 2
    assert not is_connected(remove_edges(g, cut.edges))
    star = embed(1, 3, [(0, 1), (0, 2), (0, 3)])
    cut = min_edge_cut(star)
    assert cut.size == 1
    assert not is_connected(remove_edges(star, cut.edges))
    with pytest.raises(GraphError):
        min_edge_cut(embed(2, 2, []))


def test_p_resistance():
    g = cycle_graph(3, 3)
    assert is_p_resistant(g, 0)
    assert is_p_resistant(g, 1)
    assert not is_p_resistant(g, 2)
    with pytest.raises(GraphError):
        is_p_resistant(g, -1)


def test_enumeration_agreement_exhaustive_four_nodes():
    # every graph on 4 nodes (2 per layer)
    candidates = [(u, v) for u in range(4) for v in range(u + 1, 4)]
    for bits in range(1 << len(candidates)):
        pairs = [p for i, p in enumerate(candidates) if bits >> i & 1]
        assert edge_connectivity_pairs(4, pairs) == lambda_by_enumeration(4, pairs)


def test_enumeration_agreement_random():
    rng = random.Random(7)
    for _ in range(60):
        n1, n2 = rng.randint(1, 3), rng.randint(1, 3)
        pairs = random_pairs(rng, n1, n2, p=rng.choice([0.3, 0.5, 0.8]))
        if len(pairs) > 12:
            pairs = pairs[:12]
        n = n1 + n2
        assert edge_connectivity_pairs(n, pairs) == lambda_by_enumeration(n, pairs)


def test_menger_consistency():
    # global edge connectivity equals the all-pairs minimum of max-flow
    rng = random.Random(11)
    for _ in range(25):
        n1, n2 = rng.randint(1, 4), rng.randint(1, 4)
        n = n1 + n2
        pairs = random_pairs(rng, n1, n2, p=0.6)
        lam = edge_connectivity_pairs(n, pairs)
        if n < 2:
            continue
        flows = [
            _max_flow_unit(n, pairs, s, t)[0]
            for s, t in itertools.combinations(range(n), 2)
        ]
        assert lam == min(flows)


def test_monotone_in_edges():
    rng = random.Random(13)
    for _ in range(30):
        n1, n2 = rng.randint(1, 3), rng.randint(1, 3)
        n = n1 + n2
        pairs = random_pairs(rng, n1, n2, p=0.5)
        lam = edge_connectivity_pairs(n, pairs)
        missing = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if (u, v) not in pairs
        ]
        if missing:
            extra = pairs + [missing[0]]
            assert edge_connectivity_pairs(n, extra) >= lam


def test_min_cut_removal_disconnects_random():
    rng = random.Random(17)
    for _ in range(30):
        n1, n2 = rng.randint(1, 3), rng.randint(2, 3)
        g = embed(n1, n2, random_pairs(rng, n1, n2, p=0.7))
        if not is_connected(g):
            continue
        cut = min_edge_cut(g)
        assert not is_connected(remove_edges(g, cut.edges))
        assert cut.size == link_connectivity(g).p + 1
