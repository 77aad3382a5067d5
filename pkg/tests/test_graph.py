import itertools
import logging

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hmnet import graph as graph_mod
from hmnet.degrees import DegreeList, sample_powerlaw_ndl
from hmnet.errors import ConstructionError, InfeasibleError, ParameterError
from hmnet.graph import (
    Graph,
    apply_switch,
    default_switch_attempts,
    from_degree_list,
    is_connected,
    is_graphical,
    read_edge_list,
    switch_randomize,
    write_edge_list,
)


def _realizable_sequences(n):
    """Every degree sequence of a simple graph on n labelled nodes, by enumeration."""
    pairs = list(itertools.combinations(range(n), 2))
    seqs = set()
    for mask in range(1 << len(pairs)):
        deg = [0] * n
        for b, (u, v) in enumerate(pairs):
            if mask >> b & 1:
                deg[u] += 1
                deg[v] += 1
        seqs.add(tuple(deg))
    return seqs


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_erdos_gallai_matches_enumeration(n):
    real = _realizable_sequences(n)
    for seq in itertools.product(range(n), repeat=n):
        assert is_graphical(seq) == (seq in real), seq


def test_triangle_and_k4():
    assert from_degree_list([2, 2, 2], seed=0).edges == ((0, 1), (0, 2), (1, 2))
    assert from_degree_list([3, 3, 3, 3], seed=0).edges == tuple(itertools.combinations(range(4), 2))


def test_infeasible_sequences():
    with pytest.raises(InfeasibleError):
        from_degree_list([3, 1], seed=0)
    with pytest.raises(InfeasibleError):
        from_degree_list([3, 3, 1, 1], seed=0)
    with pytest.raises(InfeasibleError):
        from_degree_list(DegreeList((3, 3, 3), "normal", deg_min=3), seed=0)


def test_restart_cap(monkeypatch):
    monkeypatch.setattr(graph_mod, "_pair_stubs", lambda *a: None)
    monkeypatch.setattr(graph_mod, "_pair_hub_first", lambda *a: None)
    monkeypatch.setattr(graph_mod, "_havel_hakimi", lambda *a: None)
    with pytest.raises(ConstructionError):
        from_degree_list([2, 2, 2], seed=0, max_restarts=3)


def test_heavy_hub_lists_are_realized_exactly():
    logging.getLogger("hmnet").setLevel(logging.ERROR)
    for seed in range(30):
        dl = sample_powerlaw_ndl(200, 2.2, 3, seed=seed)
        g = from_degree_list(dl, seed=seed)
        assert g.degrees() == list(dl.degrees)


@pytest.mark.parametrize("n", [5, 6, 7])
def test_havel_hakimi_realizes_every_graphical_sequence(n):
    rng = np.random.default_rng(0)
    for seq in sorted(_realizable_sequences(n)):
        edges = graph_mod._havel_hakimi(list(seq), rng)
        assert Graph(n, edges).degrees() == list(seq)


def test_near_complete_sequence():
    degs = [5] * 6 + [4, 4]
    g = from_degree_list(degs, seed=1)
    assert g.degrees() == degs


def test_default_attempts():
    assert default_switch_attempts(200) == 2487


def test_c4_switch_by_hand():
    edges = [(0, 1), (1, 2), (2, 3), (0, 3)]
    g = Graph(4, edges)
    work = list(g.edges)
    adj = [set(a) for a in g.adjacency]
    i, j = work.index((0, 1)), work.index((2, 3))
    (p, q), (r, s) = work[i], work[j]
    apply_switch(work, adj, i, j, (p, r), (q, s))
    out = Graph(4, work)
    assert set(out.edges) == {(0, 2), (1, 3), (1, 2), (0, 3)}
    assert out.degrees() == g.degrees()


def test_switch_randomize_rejects_nothing_illegal():
    # K4 admits no legal switch at all
    k4 = Graph(4, itertools.combinations(range(4), 2))
    assert switch_randomize(k4, 500, seed=3) == k4


def _random_graphical(draw):
    n = draw(st.integers(4, 30))
    degs = draw(st.lists(st.integers(1, min(6, n - 1)), min_size=n, max_size=n))
    if sum(degs) % 2:
        degs[0] = degs[0] + 1 if degs[0] < n - 1 else degs[0] - 1
    return degs


@st.composite
def graphical_lists(draw):
    degs = _random_graphical(draw)
    if not is_graphical(degs):
        degs = [2] * len(degs)
    return degs


@settings(max_examples=150, deadline=None)
@given(degs=graphical_lists(), seed=st.integers(0, 2**32))
def test_construction_and_switching_preserve_degrees(degs, seed):
    g0 = from_degree_list(degs, seed=seed)
    assert g0.degrees() == degs
    gr = switch_randomize(g0, 200, seed=seed)
    assert gr.degrees() == degs and gr.m == g0.m
    assert all(u < v for u, v in gr.edges)
    assert len(set(gr.edges)) == gr.m


def test_determinism():
    assert from_degree_list([3] * 20, seed=5) == from_degree_list([3] * 20, seed=5)
    g = from_degree_list([3] * 20, seed=5)
    assert switch_randomize(g, 100, seed=9) == switch_randomize(g, 100, seed=9)


def test_is_connected():
    assert is_connected(Graph(3, [(0, 1), (1, 2), (0, 2)]))
    assert not is_connected(Graph(4, [(0, 1), (2, 3)]))
    assert is_connected(Graph(1))


def test_graph_rejects_loops_and_duplicates():
    with pytest.raises(ParameterError):
        Graph(3, [(1, 1)])
    with pytest.raises(ParameterError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(ParameterError):
        Graph(3, [(0, 3)])


def test_edge_list_format(tmp_path):
    g = Graph(5, [(3, 1), (0, 4), (2, 0)])
    path = tmp_path / "g.txt"
    write_edge_list(path, g)
    assert path.read_text() == "5 3\n0 2\n0 4\n1 3\n"
    assert read_edge_list(path) == g


def test_subgraph_relabels():
    g = Graph(6, [(0, 1), (1, 4), (4, 5), (2, 3)])
    sub, labels = g.subgraph([4, 5, 1])
    assert labels == [1, 4, 5]
    assert sub.edges == ((0, 1), (1, 2))
