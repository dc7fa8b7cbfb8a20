import pytest
from hypothesis import given, strategies as st

from layersec.graph import (
    EdgeClass,
    GraphError,
    Owner,
    add_edge,
    count_by,
    degree,
    new_graph,
    remove_edges,
)


def test_new_graph_sizes():
    for n1, n2 in ((3, 3), (9, 9), (4, 3)):
        g = new_graph(n1, n2)
        assert g.n == n1 + n2
        assert len(g.edges) == 0


@pytest.mark.parametrize("n1,n2", [(0, 3), (3, 0), (0, 0)])
def test_new_graph_rejects_empty_layer(n1, n2):
    with pytest.raises(GraphError):
        new_graph(n1, n2)


def test_add_edge_classes():
    g = new_graph(4, 3)
    g = add_edge(g, 0, 1, Owner.OPERATOR1)
    assert next(iter(g.edges)).cls == EdgeClass.INTRA1
    g2 = add_edge(g, 0, 4, Owner.OPERATOR1)
    assert {e.cls for e in g2.edges} == {EdgeClass.INTRA1, EdgeClass.CROSS}
    g3 = add_edge(g, 4, 5, Owner.OPERATOR2)
    assert any(e.cls == EdgeClass.INTRA2 for e in g3.edges)


def test_add_edge_rejections():
    g = new_graph(4, 3)
    with pytest.raises(GraphError):
        add_edge(g, 4, 5, Owner.OPERATOR1)  # layer-2 link by operator 1
    with pytest.raises(GraphError):
        add_edge(g, 0, 1, Owner.OPERATOR2)  # layer-1 link by operator 2
    with pytest.raises(GraphError):
        add_edge(g, 2, 2, Owner.OPERATOR1)  # self-loop
    with pytest.raises(GraphError):
        add_edge(g, 0, 99, Owner.OPERATOR1)  # out of range
    with pytest.raises(GraphError):
        add_edge(g, 0, 4, Owner.UNOWNED)
    g = add_edge(g, 0, 1, Owner.OPERATOR1)
    with pytest.raises(GraphError):
        add_edge(g, 1, 0, Owner.OPERATOR1)  # duplicate, reversed


def test_remove_edges():
    g = new_graph(3, 1)
    for u, v in ((0, 1), (1, 2), (0, 2)):
        g = add_edge(g, u, v, Owner.OPERATOR1)
    assert remove_edges(g, []) == g
    empty = remove_edges(g, list(g.edges))
    assert len(empty.edges) == 0
    with pytest.raises(GraphError):
        remove_edges(empty, [next(iter(g.edges))])


def test_remove_one_cycle_edge_keeps_connectivity():
    from layersec.connectivity import is_connected

    g = new_graph(2, 2)
    cycle = [(0, 2), (2, 1), (1, 3), (3, 0)]
    for u, v in cycle:
        g = add_edge(g, min(u, v), max(u, v), Owner.OPERATOR1)
    cut = [next(iter(g.edges))]
    assert is_connected(remove_edges(g, cut))


def test_degree():
    g = new_graph(2, 2)
    assert degree(g, 0) == 0
    g = add_edge(g, 0, 2, Owner.OPERATOR1)
    g = add_edge(g, 0, 3, Owner.OPERATOR1)
    assert degree(g, 0) == 2
    assert degree(g, 1) == 0
    with pytest.raises(GraphError):
        degree(g, 4)


def test_count_by_empty():
    g = new_graph(3, 3)
    for owner in (Owner.OPERATOR1, Owner.OPERATOR2, Owner.UNOWNED):
        for cls in EdgeClass:
            assert count_by(g, owner, cls) == 0


def test_count_by_filters():
    g = new_graph(2, 2)
    g = add_edge(g, 0, 1, Owner.OPERATOR1)
    g = add_edge(g, 0, 2, Owner.OPERATOR1)
    g = add_edge(g, 1, 3, Owner.OPERATOR2)
    g = add_edge(g, 2, 3, Owner.OPERATOR2)
    assert count_by(g, Owner.OPERATOR1, EdgeClass.INTRA1) == 1
    assert count_by(g, Owner.OPERATOR1, EdgeClass.CROSS) == 1
    assert count_by(g, Owner.OPERATOR2, EdgeClass.CROSS) == 1
    assert count_by(g, Owner.OPERATOR2, EdgeClass.INTRA2) == 1
    assert count_by(g, owner=Owner.OPERATOR1) == 2
    assert count_by(g, cls=EdgeClass.CROSS) == 2
    assert count_by(g) == 4


@st.composite
def graph_builds(draw):
    n1 = draw(st.integers(1, 4))
    n2 = draw(st.integers(1, 4))
    n = n1 + n2
    candidates = [(u, v) for u in range(n) for v in range(u + 1, n)]
    picks = draw(st.lists(st.sampled_from(candidates), unique=True, max_size=len(candidates)))
    builds = []
    for u, v in picks:
        if v < n1:
            builds.append((u, v, Owner.OPERATOR1))
        elif u >= n1:
            builds.append((u, v, Owner.OPERATOR2))
        else:
            builds.append((u, v, draw(st.sampled_from([Owner.OPERATOR1, Owner.OPERATOR2]))))
    return n1, n2, builds


@given(graph_builds())
def test_graph_invariants(build):
    n1, n2, triples = build
    g = new_graph(n1, n2)
    for u, v, owner in triples:
        g = add_edge(g, u, v, owner)
    # degree sum identity
    assert sum(degree(g, v) for v in range(g.n)) == 2 * len(g.edges)
    # stored class always matches the class re-derived from the endpoints
    for e in g.edges:
        assert e.cls == g.classify(e.u, e.v)
        assert e.owner in (Owner.OPERATOR1, Owner.OPERATOR2)
        if e.owner == Owner.OPERATOR1:
            assert e.cls in (EdgeClass.INTRA1, EdgeClass.CROSS)
        else:
            assert e.cls in (EdgeClass.INTRA2, EdgeClass.CROSS)
    # add followed by remove is the identity on the edge set
    if triples:
        u, v, owner = triples[0]
        before = remove_edges(g, [e for e in g.edges if (e.u, e.v) == (min(u, v), max(u, v))])
        again = add_edge(before, u, v, owner)
        assert again.edges == g.edges
