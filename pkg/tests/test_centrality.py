import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from costar.centrality import (
    betweenness_exact,
    betweenness_sampled,
    closeness,
    closeness_sample_stats,
    closeness_top,
    degree_centrality,
    sample_pivots,
)
from costar.graph import CoStarGraph
from costar.paths import hop_distribution

from .oracles import batman_oracle
from .oracles.brute import adjacency, betweenness_by_enumeration, bfs_dist, random_connected_graph


def edge_list(g):
    return [(u, v) for u, v, _ in g.edges()]


# --- degree ---------------------------------------------------------------------


def test_degree_batman(batman):
    g, table = batman
    vec = degree_centrality(g)
    assert vec.score(table.lookup("Christian Bale")) == 1.0
    assert vec.score(table.lookup("Liam Neeson")) == 0.5625
    assert np.array_equal(vec.scores * (g.n - 1), g.degrees())


def test_degree_needs_two_nodes():
    with pytest.raises(ValueError):
        degree_centrality(CoStarGraph.from_edges(1, []))


# --- betweenness ----------------------------------------------------------------


def test_path_graph():
    g = CoStarGraph.from_edges(3, [(0, 1), (1, 2)])
    assert betweenness_exact(g).scores.tolist() == [0.0, 1.0, 0.0]


def test_complete_graph_is_zero():
    g = CoStarGraph.from_edges(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    assert betweenness_exact(g).scores.tolist() == [0.0] * 4


def test_tiny_graphs_score_zero():
    assert betweenness_exact(CoStarGraph.from_edges(2, [(0, 1)])).scores.tolist() == [0.0, 0.0]


def test_batman_against_enumeration(batman):
    g, _ = batman
    expected = betweenness_by_enumeration(g.n, edge_list(g))
    np.testing.assert_allclose(betweenness_exact(g).scores, expected, rtol=0, atol=1e-12)
    # 6*3 + 6*4 + 3*4 = 54 cross-movie pairs, each with four paths, one per core actor
    scores = betweenness_exact(g).scores
    assert np.flatnonzero(scores).tolist() == [0, 1, 4, 9]
    assert scores[0] == pytest.approx(13.5 / 120, abs=1e-15)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(3, 40), st.floats(0.0, 0.3))
def test_random_against_enumeration(seed, n, p):
    edges = random_connected_graph(random.Random(seed), n, p)
    g = CoStarGraph.from_edges(n, edges)
    np.testing.assert_allclose(betweenness_exact(g).scores, betweenness_by_enumeration(n, edges), rtol=0, atol=1e-9)


def test_disconnected_graph_works_per_component():
    # two paths of three: each middle node carries one pair of its own component
    g = CoStarGraph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    expected = betweenness_by_enumeration(6, edge_list(g))
    np.testing.assert_allclose(betweenness_exact(g).scores, expected, atol=1e-12)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(3, 50), st.integers(0, 1000))
def test_sampled_with_all_pivots_is_exact(seed, n, rng_seed):
    g = CoStarGraph.from_edges(n, random_connected_graph(random.Random(seed), n, 0.1))
    exact = betweenness_exact(g, workers=1).scores
    sampled = betweenness_sampled(g, n, rng_seed, workers=3)
    assert sampled.scores.tobytes() == exact.tobytes()
    assert (sampled.k, sampled.seed) == (n, rng_seed)


def test_sampled_is_deterministic_across_workers():
    g = CoStarGraph.from_edges(120, random_connected_graph(random.Random(5), 120, 0.04))
    runs = [betweenness_sampled(g, 50, 11, workers=w).scores.tobytes() for w in (1, 2, 8)]
    assert runs[0] == runs[1] == runs[2]
    assert betweenness_sampled(g, 50, 12).scores.tobytes() != runs[0]


def test_sample_pivots():
    piv = sample_pivots(100, 10, 4)
    assert piv.size == 10 and len(set(piv.tolist())) == 10
    assert (np.diff(piv) > 0).all()
    assert np.array_equal(piv, sample_pivots(100, 10, 4))
    with pytest.raises(ValueError):
        sample_pivots(10, 0, 0)
    with pytest.raises(ValueError):
        sample_pivots(10, 11, 0)


def test_sampled_batman_converges(batman):
    g, _ = batman
    exact = betweenness_exact(g).scores
    runs = np.array([betweenness_sampled(g, 5, s, workers=1).scores for s in range(3000)])
    se = runs.std(axis=0, ddof=1) / np.sqrt(len(runs))
    assert (np.abs(runs.mean(axis=0) - exact) <= 4 * se + 1e-12).all()


# --- closeness ------------------------------------------------------------------


def test_closeness_batman(batman):
    g, table = batman
    assert closeness(g, table.lookup("Christian Bale")) == 1.0
    assert closeness(g, table.lookup("Liam Neeson")) == 16 / 23
    facts = batman_oracle.enumerate_all(batman_oracle.load())
    for name, total in facts["closeness_sum"].items():
        assert closeness(g, table.lookup(name)) == 16 / total


def test_closeness_rejects_disconnected():
    g = CoStarGraph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(ValueError, match="connected"):
        closeness(g, 0)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 80))
def test_closeness_agrees_with_hop_counts(seed, n):
    g = CoStarGraph.from_edges(n, random_connected_graph(random.Random(seed), n, 0.05))
    for v in range(0, n, max(1, n // 8)):
        hops = hop_distribution(g, v)
        total = sum(d * c for d, c in hops.items())
        assert closeness(g, v) == pytest.approx((n - 1) / total, abs=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 40))
def test_pendant_node_shifts_closeness_as_predicted(seed, n):
    rng = random.Random(seed)
    edges = random_connected_graph(rng, n, 0.1)
    x = rng.randrange(n)
    before = CoStarGraph.from_edges(n, edges)
    after = CoStarGraph.from_edges(n + 1, edges + [(x, n)])
    adj = adjacency(n, edges)
    for v in range(n):
        d = bfs_dist(adj, v)
        s, dx = sum(d.values()), d[x]
        assert closeness(after, v) == pytest.approx(n / (s + dx + 1), abs=1e-12)
        # the new actor lowers v's closeness exactly when it sits farther than v's mean distance
        if dx + 1 > s / (n - 1):
            assert closeness(after, v) < closeness(before, v)
        elif dx + 1 < s / (n - 1):
            assert closeness(after, v) > closeness(before, v)


def test_closeness_top_limit_one(batman):
    g, table = batman
    vec = closeness_top(g, [2, 0, 1], 1)
    assert vec.ids.tolist() == [2]
    assert vec.score(2) == closeness(g, 2)


def test_closeness_top_ties_ranked_by_name(batman):
    g, table = batman
    vec = closeness_top(g, list(range(17)), 17)
    ranked = vec.ranked(table)
    top4 = [table.name(v) for v, _ in ranked[:4]]
    assert top4 == ["Christian Bale", "Gary Oldman", "Michael Caine", "Morgan Freeman"]
    assert all(score == 1.0 for _, score in ranked[:4])
    assert vec.extra["mean_hops"][table.lookup("Liam Neeson")] == 23 / 16


def test_ranked_limit_is_prefix(batman):
    g, table = batman
    vec = degree_centrality(g)
    full = vec.ranked(table)
    for limit in range(0, 18):
        assert vec.ranked(table, limit) == full[:limit]


# --- sampled closeness statistics ----------------------------------------------


def test_sample_stats_whole_batman(batman):
    g, _ = batman
    facts = batman_oracle.enumerate_all(batman_oracle.load())
    values = [total / 16 for total in facts["closeness_sum"].values()]
    stats = closeness_sample_stats(g, 17, seed=3)
    assert sorted(stats.values.tolist()) == sorted(values)
    assert stats.mean == pytest.approx(sum(values) / 17, abs=1e-15)
    mu = sum(values) / 17
    assert stats.sd == pytest.approx((sum((x - mu) ** 2 for x in values) / 16) ** 0.5, abs=1e-12)
    assert stats.hist_counts.sum() == 17 and stats.hist_counts.size == 20


def test_sample_stats_complete_graph():
    n = 9
    g = CoStarGraph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])
    stats = closeness_sample_stats(g, 5, seed=1)
    assert stats.mean == 1.0 and stats.sd == 0.0


def test_sample_stats_errors(batman):
    g, _ = batman
    with pytest.raises(ValueError):
        closeness_sample_stats(g, 0)
    with pytest.raises(ValueError):
        closeness_sample_stats(g, 18)


def test_sample_stats_deterministic(batman):
    g, _ = batman
    a = closeness_sample_stats(g, 6, seed=9, workers=1)
    b = closeness_sample_stats(g, 6, seed=9, workers=4)
    assert a.ids.tolist() == b.ids.tolist() and a.mean == b.mean and a.sd == b.sd
