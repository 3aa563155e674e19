from math import comb

import numpy as np
import pytest

from qwdist.graphs import (
    LabeledGraph,
    OrderOutOfRange,
    complete_graph,
    edge_list,
    enumerate_labeled_connected,
    is_path_graph,
    laplacian,
    path_sequence,
)


def connected_count(n):
    """Connected labeled graphs on n vertices by inclusion-exclusion on the component of vertex 0."""
    c = {}
    for m in range(1, n + 1):
        total = 2 ** comb(m, 2)
        for k in range(1, m):
            total -= comb(m - 1, k - 1) * c[k] * 2 ** comb(m - k, 2)
        c[m] = total
    return c[n]


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 1), (3, 4), (4, 38), (5, 728)])
def test_enumeration_counts(n, expected):
    graphs = enumerate_labeled_connected(n)
    assert len(graphs) == expected == connected_count(n)


def test_enumeration_order_and_uniqueness():
    graphs = enumerate_labeled_connected(4)
    masks = [g.mask for g in graphs]
    assert masks == sorted(set(masks))
    assert [g.mask for g in enumerate_labeled_connected(3)] == [0b011, 0b101, 0b110, 0b111]


@pytest.mark.parametrize("n", [0, 7, -1])
def test_enumeration_bounds(n):
    with pytest.raises(OrderOutOfRange, match="between 1 and 6"):
        enumerate_labeled_connected(n)


def test_max_order_env(monkeypatch):
    monkeypatch.setenv("QWDIST_MAX_ORDER", "3")
    with pytest.raises(OrderOutOfRange, match="between 1 and 3"):
        enumerate_labeled_connected(4)


def test_edge_numbering():
    assert edge_list(4) == [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]
    g = LabeledGraph.from_mask(4, 0b100101)
    assert g.sorted_edges() == [(0, 1), (1, 2), (2, 3)]
    assert g.mask == 0b100101


def test_invalid_graphs():
    with pytest.raises(ValueError, match="not connected"):
        LabeledGraph(3, frozenset({(0, 1)}))
    with pytest.raises(ValueError, match="self-loop"):
        LabeledGraph(2, frozenset({(0, 0), (0, 1)}))
    with pytest.raises(ValueError, match="outside vertex range"):
        LabeledGraph(2, frozenset({(0, 2)}))
    with pytest.raises(ValueError, match="bits beyond"):
        LabeledGraph.from_mask(3, 0b1000)


def test_laplacian_examples():
    assert laplacian(complete_graph(3)) == ((2, -1, -1), (-1, 2, -1), (-1, -1, 2))
    assert laplacian(LabeledGraph.from_mask(3, 0b011)) == ((2, -1, -1), (-1, 1, 0), (-1, 0, 1))
    assert laplacian(LabeledGraph(1, frozenset())) == ((0,),)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_laplacian_properties(n):
    for g in enumerate_labeled_connected(n):
        L = np.array(laplacian(g))
        assert (L == L.T).all()
        assert (L.sum(axis=1) == 0).all()
        assert list(np.diag(L)) == g.degrees()
        ev = np.linalg.eigvalsh(L.astype(float))
        assert ev.min() > -1e-9
        assert (np.abs(ev) < 1e-9).sum() == 1


def test_complete_graph():
    assert complete_graph(3).sorted_edges() == [(0, 1), (0, 2), (1, 2)]
    assert len(complete_graph(4).edges) == 6
    assert complete_graph(2).sorted_edges() == [(0, 1)]


def test_is_path_graph():
    assert is_path_graph(LabeledGraph(4, frozenset({(0, 1), (1, 2), (2, 3)})))
    assert not is_path_graph(complete_graph(4))
    assert not is_path_graph(LabeledGraph(4, frozenset({(0, 1), (0, 2), (0, 3)})))
    assert is_path_graph(complete_graph(2))
    assert is_path_graph(LabeledGraph(1, frozenset()))


def test_labeled_path_count_order4():
    # n!/2 labelings of a path on 4 vertices
    assert sum(is_path_graph(g) for g in enumerate_labeled_connected(4)) == 12


def test_path_sequence():
    g = LabeledGraph(4, frozenset({(2, 0), (0, 3), (3, 1)}))
    assert path_sequence(g) == [1, 3, 0, 2]
    assert path_sequence(complete_graph(3)) is None


def test_json_roundtrip():
    g = LabeledGraph.from_mask(4, 0b101011)
    obj = g.to_json()
    assert obj == {"order": 4, "edges": [[0, 1], [0, 2], [0, 3], [2, 3]]}
    assert LabeledGraph.from_json(obj) == g
