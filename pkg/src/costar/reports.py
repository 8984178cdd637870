"""Ranked tables: movies per actor, acting partnerships, per-decade centrality."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .centrality import (
    DEFAULT_SEED,
    betweenness_sampled,
    closeness_top,
    degree_centrality,
)
from .components import largest_component
from .graph import ActorTable, CoStarGraph, build_graph
from .ingest import MovieRecord, filter_by_decade


@dataclass
class RankedTable:
    """Rows of (label, value) sorted by descending value, ties by label."""

    title: str
    rows: list[tuple[str, float]] = field(default_factory=list)
    provenance: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.rows)

    def labels(self) -> list[str]:
        return [label for label, _ in self.rows]

    def value_of(self, label: str):
        for lab, value in self.rows:
            if lab == label:
                return value
        raise KeyError(label)


def _rank(values: np.ndarray, label: Callable[[int], str], limit: int | None) -> list[tuple[str, int]]:
    idx = np.arange(values.size)
    if limit is not None and limit < values.size:
        if limit <= 0:
            return []
        cutoff = np.partition(values, values.size - limit)[values.size - limit]
        idx = np.flatnonzero(values >= cutoff)
    rows = sorted(((label(i), values[i].item()) for i in idx.tolist()), key=lambda r: (-r[1], r[0]))
    return rows[:limit] if limit is not None else rows


def distinct_movie_counts(g: CoStarGraph) -> np.ndarray:
    """Per node, the number of distinct titles on its incident edges."""
    title_ids: dict[str, int] = {}
    tid = np.fromiter((title_ids.setdefault(t, len(title_ids)) for t in g.titles), np.int64, len(g.titles))
    per_node = g.edge_ptr[g.indptr[1:]] - g.edge_ptr[g.indptr[:-1]]
    owners = np.repeat(np.arange(g.n, dtype=np.int64), per_node)
    keys = np.unique(owners * max(len(title_ids), 1) + tid[g.edge_movies])
    return np.bincount(keys // max(len(title_ids), 1), minlength=g.n)


def movies_per_actor(g: CoStarGraph, table: ActorTable, limit: int | None = None) -> RankedTable:
    counts = distinct_movie_counts(g)
    rows = _rank(counts, table.name, limit)
    return RankedTable("Movies Per Actor", rows, {"source": "distinct edge titles", "n": g.n})


def top_partnerships(g: CoStarGraph, table: ActorTable, limit: int | None = None) -> RankedTable:
    """One row per co-starring pair, valued by the number of shared movies.

    Labels read ``"<A> and <B>"`` with A the lower actor id.
    """
    owners = np.repeat(np.arange(g.n, dtype=np.int64), g.degrees())
    upper = owners < g.indices
    us, vs = owners[upper], g.indices[upper]
    mult = g.multiplicities()[upper]
    rows = _rank(mult, lambda i: f"{table.name(int(us[i]))} and {table.name(int(vs[i]))}", limit)
    return RankedTable("Movies Per Acting Partnership", rows, {"source": "edge multiplicity", "n": g.n})


def _vector_table(title: str, vec, table: ActorTable, limit: int, provenance: dict) -> RankedTable:
    rows = [(table.name(v), score) for v, score in vec.ranked(table, limit)]
    return RankedTable(title, rows, {**provenance, **vec.metadata()})


def decade_report(
    records: Sequence[MovieRecord],
    decade: int,
    k: int = 1000,
    seed: int = DEFAULT_SEED,
    limit: int = 1000,
    top: int = 20,
    workers: int | None = None,
) -> dict[str, RankedTable]:
    """Degree, sampled betweenness and closeness tables for one decade.

    Centrality is computed on the largest component of that decade's
    graph. ``k`` is capped at the component size; closeness is computed for
    the first ``limit`` actors in the betweenness ranking.
    """
    provenance = {"decade": decade}
    tables = {
        "degree": RankedTable("Degree Centrality", provenance=dict(provenance)),
        "betweenness": RankedTable("Betweenness Centrality", provenance=dict(provenance)),
        "closeness": RankedTable("Closeness Centrality", provenance=dict(provenance)),
    }
    g, table = build_graph(filter_by_decade(records, decade))
    if g.n == 0:
        return tables
    sub, remap = largest_component(g)
    if sub.n < 2:
        return tables
    names = table.subset(remap)
    provenance["component_n"] = sub.n
    deg = degree_centrality(sub)
    btw = betweenness_sampled(sub, min(k, sub.n), seed, workers)
    ranking = [v for v, _ in btw.ranked(names, limit)]
    clo = closeness_top(sub, ranking, limit, workers)
    return {
        "degree": _vector_table("Degree Centrality", deg, names, top, provenance),
        "betweenness": _vector_table("Betweenness Centrality", btw, names, top, provenance),
        "closeness": _vector_table("Closeness Centrality", clo, names, top, provenance),
    }
