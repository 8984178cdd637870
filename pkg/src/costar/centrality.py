"""Degree, betweenness and closeness centrality on the co-star graph.

Betweenness follows Brandes' dependency accumulation: one BFS per source
followed by a reverse sweep. The sampled variant runs the same sweep from
``k`` pivots drawn without replacement and scales by ``n / k``, which makes
it an unbiased estimator of the exact value.

Work is spread over a thread pool (the kernels release the GIL), but the
per-source dependency vectors are always added in ascending source order,
so results are bit-identical for any worker count.
"""

from __future__ import annotations

import os
import statistics
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence, TypeVar

import numpy as np

from . import _kernels
from .graph import ActorTable, CoStarGraph

T = TypeVar("T")
R = TypeVar("R")

DEFAULT_SEED = 0
WORKERS_ENV = "COSTAR_WORKERS"
_CHUNK = 16


def default_workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def make_rng(seed: int) -> np.random.Generator:
    """Seeded PCG64 generator used for every random choice in the package."""
    return np.random.Generator(np.random.PCG64(seed))


def _ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: int) -> Iterator[R]:
    """Like ``map`` but on a thread pool, with a bounded number of tasks in flight."""
    if workers <= 1:
        yield from map(fn, items)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        pending: deque = deque()
        for item in items:
            pending.append(pool.submit(fn, item))
            if len(pending) >= 2 * workers:
                yield pending.popleft().result()
        while pending:
            yield pending.popleft().result()


def _chunks(arr: np.ndarray, size: int = _CHUNK) -> list[np.ndarray]:
    return [arr[i:i + size] for i in range(0, arr.size, size)]


@dataclass
class CentralityVector:
    """Scores for one measure over a set of nodes.

    ``ids[i]`` is the node scored by ``scores[i]``; for whole-graph measures
    ``ids`` is simply ``arange(n)``.
    """

    measure: str
    ids: np.ndarray
    scores: np.ndarray
    n: int
    k: int | None = None
    seed: int | None = None
    extra: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return int(self.ids.size)

    def score(self, v: int) -> float:
        hit = np.flatnonzero(self.ids == v)
        if not hit.size:
            raise KeyError(v)
        return float(self.scores[hit[0]])

    def as_dict(self) -> dict[int, float]:
        return dict(zip(self.ids.tolist(), self.scores.tolist()))

    def metadata(self) -> dict:
        meta = {"measure": self.measure, "n": self.n}
        if self.k is not None:
            meta["k"] = self.k
        if self.seed is not None:
            meta["seed"] = self.seed
        return meta

    def ranked(self, table: ActorTable, limit: int | None = None) -> list[tuple[int, float]]:
        """(node id, score) pairs by descending score, ties by actor name."""
        scores = self.scores
        idx = np.arange(scores.size)
        if limit is not None and limit < scores.size:
            if limit <= 0:
                return []
            cutoff = np.partition(scores, scores.size - limit)[scores.size - limit]
            idx = np.flatnonzero(scores >= cutoff)
        ids = self.ids.tolist()
        order = sorted(idx.tolist(), key=lambda i: (-scores[i], table.name(ids[i])))
        if limit is not None:
            order = order[:limit]
        return [(ids[i], float(scores[i])) for i in order]


def degree_centrality(g: CoStarGraph) -> CentralityVector:
    n = g.n
    if n < 2:
        raise ValueError("degree centrality needs at least two nodes")
    scores = g.degrees().astype(np.float64) / (n - 1)
    return CentralityVector("degree", np.arange(n), scores, n)


def _dependency_sum(g: CoStarGraph, sources: np.ndarray, workers: int) -> np.ndarray:
    total = np.zeros(g.n, np.float64)

    def run(chunk: np.ndarray) -> np.ndarray:
        return _kernels.brandes_batch(g.indptr, g.indices, chunk)

    for block in _ordered_map(run, _chunks(sources), workers):
        for row in block:
            total += row
    return total


def _betweenness(g: CoStarGraph, sources: np.ndarray, workers: int) -> np.ndarray:
    n = g.n
    if n < 3:
        return np.zeros(n, np.float64)
    total = _dependency_sum(g, np.sort(sources), workers)
    # ordered pairs counted from both ends: halve for undirected
    raw = (total / 2.0) * (n / sources.size)
    return raw / ((n - 1) * (n - 2) / 2.0)


def betweenness_exact(g: CoStarGraph, workers: int | None = None) -> CentralityVector:
    """Normalised betweenness with endpoints excluded, divided by C(n-1, 2)."""
    workers = workers or default_workers()
    scores = _betweenness(g, np.arange(g.n, dtype=np.int64), workers)
    return CentralityVector("betweenness-exact", np.arange(g.n), scores, g.n)


def sample_pivots(n: int, k: int, seed: int) -> np.ndarray:
    if not 1 <= k <= n:
        raise ValueError(f"pivot count k must be between 1 and n={n}, got {k}")
    return np.sort(make_rng(seed).choice(n, size=k, replace=False))


def betweenness_sampled(
    g: CoStarGraph, k: int, seed: int = DEFAULT_SEED, workers: int | None = None
) -> CentralityVector:
    """Estimate betweenness from ``k`` random pivot sources.

    With ``k == n`` every node is a pivot and the result equals
    :func:`betweenness_exact` bit for bit.
    """
    workers = workers or default_workers()
    pivots = sample_pivots(g.n, k, seed)
    scores = _betweenness(g, pivots, workers)
    return CentralityVector("betweenness-sampled", np.arange(g.n), scores, g.n, k=k, seed=seed)


def _distance_sums(g: CoStarGraph, sources: np.ndarray, workers: int) -> np.ndarray:
    n = g.n
    if n < 2:
        raise ValueError("closeness needs at least two nodes")

    def run(chunk: np.ndarray):
        return _kernels.distance_sums(g.indptr, g.indices, chunk)

    totals = []
    for sums, reached in _ordered_map(run, _chunks(np.asarray(sources, np.int64), 64), workers):
        if (reached != n).any():
            raise ValueError("closeness requires a connected graph; extract a component first")
        totals.append(sums)
    return np.concatenate(totals) if totals else np.empty(0, np.int64)


def closeness(g: CoStarGraph, v: int) -> float:
    """(n - 1) divided by the sum of hop distances from ``v``.

    Its reciprocal is the mean number of hops from ``v`` to everyone else.
    """
    total = _distance_sums(g, np.array([v]), 1)[0]
    return (g.n - 1) / float(total)


def closeness_top(
    g: CoStarGraph, candidates: Sequence[int], limit: int, workers: int | None = None
) -> CentralityVector:
    """Closeness for the first ``limit`` candidates only."""
    workers = workers or default_workers()
    ids = np.asarray(candidates, np.int64)[:limit]
    totals = _distance_sums(g, ids, workers)
    scores = (g.n - 1) / totals.astype(np.float64)
    mean_hops = totals / float(g.n - 1)
    return CentralityVector("closeness", ids, scores, g.n, extra={"mean_hops": mean_hops})


@dataclass
class SampleStats:
    sample_size: int
    mean: float
    sd: float
    ids: np.ndarray
    values: np.ndarray
    hist_counts: np.ndarray
    hist_edges: np.ndarray


def closeness_sample_stats(
    g: CoStarGraph, sample_size: int, seed: int = DEFAULT_SEED, workers: int | None = None
) -> SampleStats:
    """Mean and spread of per-actor mean path lengths over a random sample.

    The standard deviation uses the n-1 denominator (0.0 for a single actor);
    the histogram has 20 equal-width bins over the sample range.
    """
    n = g.n
    if not 1 <= sample_size <= n:
        raise ValueError(f"sample size must be between 1 and n={n}, got {sample_size}")
    workers = workers or default_workers()
    ids = make_rng(seed).choice(n, size=sample_size, replace=False)
    values = _distance_sums(g, ids, workers) / float(n - 1)
    vals = values.tolist()
    mean = statistics.mean(vals)
    sd = statistics.stdev(vals) if len(vals) > 1 else 0.0
    counts, edges = np.histogram(values, bins=20)
    return SampleStats(sample_size, mean, sd, ids, values, counts, edges)
