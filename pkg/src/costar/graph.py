"""Co-star graph: actors as nodes, one parallel edge per shared movie.

The graph is stored once in CSR form. ``indptr``/``indices`` give the simple
(deduplicated) adjacency with each row sorted by neighbour id; every
adjacency slot additionally owns a run of ``edge_movies`` (record indices
into ``titles``) whose length is the pair's multiplicity. The simple-graph
view is the adjacency alone, the multigraph view adds the runs.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .ingest import MovieRecord


class ActorTable:
    """Bidirectional mapping between actor names and dense integer ids."""

    def __init__(self, names: Iterable[str] = ()):
        self.names: list[str] = []
        self._ids: dict[str, int] = {}
        for name in names:
            self.intern(name)

    def intern(self, name: str) -> int:
        aid = self._ids.get(name)
        if aid is None:
            aid = self._ids[name] = len(self.names)
            self.names.append(name)
        return aid

    def get(self, name: str) -> int | None:
        return self._ids.get(name)

    def lookup(self, name: str) -> int:
        return self._ids[name]

    def name(self, aid: int) -> str:
        return self.names[aid]

    def subset(self, remap: np.ndarray) -> "ActorTable":
        """Table for a subgraph whose new id ``i`` was old id ``remap[i]``."""
        return ActorTable(self.names[i] for i in remap.tolist())

    def __contains__(self, name: str) -> bool:
        return name in self._ids

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, ActorTable) and self.names == other.names


def _gather_ranges(starts: np.ndarray, lengths: np.ndarray) -> np.ndarray:
    """Concatenation of ``arange(s, s + l)`` over all (s, l) pairs."""
    total = int(lengths.sum())
    if total == 0:
        return np.empty(0, np.int64)
    offsets = np.repeat(starts - np.cumsum(lengths) + lengths, lengths)
    return offsets + np.arange(total)


class CoStarGraph:
    def __init__(self, indptr, indices, edge_ptr, edge_movies, titles: Sequence[str]):
        self.indptr = np.ascontiguousarray(indptr, np.int64)
        self.indices = np.ascontiguousarray(indices, np.int32)
        self.edge_ptr = np.ascontiguousarray(edge_ptr, np.int64)
        self.edge_movies = np.ascontiguousarray(edge_movies, np.int32)
        self.titles = list(titles)

    @classmethod
    def from_pairs(cls, n: int, us, vs, movies, titles: Sequence[str]) -> "CoStarGraph":
        """Build from one (u, v, movie index) triple per parallel edge.

        Pairs may be given in either orientation; self-pairs are dropped.
        Title runs keep movie-index order, i.e. record order.
        """
        us = np.asarray(us, np.int32)
        vs = np.asarray(vs, np.int32)
        movies = np.asarray(movies, np.int32)
        keep = us != vs
        us, vs, movies = us[keep], vs[keep], movies[keep]
        src = np.concatenate([us, vs])
        dst = np.concatenate([vs, us])
        mov = np.concatenate([movies, movies])
        del us, vs, movies
        order = np.lexsort((mov, dst, src))
        src, dst, mov = src[order], dst[order], mov[order]
        del order
        if src.size:
            new_pair = np.empty(src.size, bool)
            new_pair[0] = True
            np.logical_or(src[1:] != src[:-1], dst[1:] != dst[:-1], out=new_pair[1:])
            starts = np.flatnonzero(new_pair)
        else:
            starts = np.empty(0, np.int64)
        edge_ptr = np.append(starts, src.size)
        indices = dst[starts]
        indptr = np.zeros(n + 1, np.int64)
        np.cumsum(np.bincount(src[starts], minlength=n), out=indptr[1:])
        return cls(indptr, indices, edge_ptr, mov, titles)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "CoStarGraph":
        """Graph with nodes ``0..n-1``; edge ``i`` is labelled ``"e<i>"``."""
        edges = list(edges)
        us = [e[0] for e in edges]
        vs = [e[1] for e in edges]
        return cls.from_pairs(n, us, vs, range(len(edges)), [f"e{i}" for i in range(len(edges))])

    @property
    def n(self) -> int:
        return self.indptr.shape[0] - 1

    @property
    def num_simple_edges(self) -> int:
        return self.indices.shape[0] // 2

    @property
    def num_multi_edges(self) -> int:
        return self.edge_movies.shape[0] // 2

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def multiplicities(self) -> np.ndarray:
        """Multiplicity of every adjacency slot, aligned with ``indices``."""
        return np.diff(self.edge_ptr)

    def _slot(self, u: int, v: int) -> int:
        if u == v:
            raise ValueError("co-star pairs need two distinct actors")
        lo, hi = self.indptr[u], self.indptr[u + 1]
        i = lo + int(np.searchsorted(self.indices[lo:hi], v))
        if i < hi and self.indices[i] == v:
            return i
        return -1

    def edge_movie_indices(self, u: int, v: int) -> np.ndarray:
        i = self._slot(u, v)
        if i < 0:
            return np.empty(0, np.int32)
        return self.edge_movies[self.edge_ptr[i]:self.edge_ptr[i + 1]]

    def edge_titles(self, u: int, v: int) -> list[str]:
        return [self.titles[m] for m in self.edge_movie_indices(u, v).tolist()]

    def first_title(self, u: int, v: int) -> str:
        i = self._slot(u, v)
        if i < 0:
            raise KeyError(f"nodes {u} and {v} are not adjacent")
        return self.titles[self.edge_movies[self.edge_ptr[i]]]

    def multiplicity(self, u: int, v: int) -> int:
        i = self._slot(u, v)
        return 0 if i < 0 else int(self.edge_ptr[i + 1] - self.edge_ptr[i])

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and self._slot(u, v) >= 0

    def edges(self) -> Iterable[tuple[int, int, int]]:
        """Yield (u, v, multiplicity) once per adjacent pair, with u < v."""
        mult = self.multiplicities()
        for u in range(self.n):
            for i in range(self.indptr[u], self.indptr[u + 1]):
                v = int(self.indices[i])
                if u < v:
                    yield u, v, int(mult[i])

    def subgraph(self, nodes: Iterable[int]) -> tuple["CoStarGraph", np.ndarray]:
        """Induced subgraph on ``nodes``.

        New ids follow ascending old id. Returns the subgraph and the
        remapping array (``remap[new] = old``).
        """
        if isinstance(nodes, np.ndarray):
            remap = np.unique(nodes.astype(np.int64))
        else:
            remap = np.unique(np.fromiter(nodes, np.int64))
        n = self.n
        if remap.size and (remap[0] < 0 or remap[-1] >= n):
            raise IndexError("subgraph nodes out of range")
        new_id = np.full(n, -1, np.int64)
        new_id[remap] = np.arange(remap.size)
        rows = np.repeat(np.arange(n), self.degrees())
        mask = (new_id[rows] >= 0) & (new_id[self.indices] >= 0)
        sub_rows = new_id[rows[mask]]
        sub_indices = new_id[self.indices[mask]]
        indptr = np.zeros(remap.size + 1, np.int64)
        np.cumsum(np.bincount(sub_rows, minlength=remap.size), out=indptr[1:])
        lengths = self.multiplicities()[mask]
        picked = _gather_ranges(self.edge_ptr[:-1][mask], lengths)
        edge_ptr = np.zeros(lengths.size + 1, np.int64)
        np.cumsum(lengths, out=edge_ptr[1:])
        sub = CoStarGraph(indptr, sub_indices, edge_ptr, self.edge_movies[picked], self.titles)
        return sub, remap

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CoStarGraph)
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.edge_ptr, other.edge_ptr)
            and np.array_equal(self.edge_movies, other.edge_movies)
            and self.titles == other.titles
        )

    def __repr__(self) -> str:
        return f"CoStarGraph(n={self.n}, simple_edges={self.num_simple_edges}, multi_edges={self.num_multi_edges})"


@lru_cache(maxsize=512)
def _pair_indices(c: int) -> tuple[np.ndarray, np.ndarray]:
    return np.triu_indices(c, 1)


def build_graph(records: Sequence[MovieRecord]) -> tuple[CoStarGraph, ActorTable]:
    """Build the co-star graph from cleaned records.

    Every unordered pair of distinct names in a cast adds one parallel edge
    labelled with the movie title. Repeated names in a cast collapse to one
    node. Only actors from casts with at least two distinct names get an id,
    assigned in first-appearance order.
    """
    table = ActorTable()
    us, vs, movies = [], [], []
    for idx, rec in enumerate(records):
        cast = list(dict.fromkeys(rec.cast))
        c = len(cast)
        if c < 2:
            continue
        ids = np.fromiter((table.intern(name) for name in cast), np.int32, c)
        iu, ju = _pair_indices(c)
        us.append(ids[iu])
        vs.append(ids[ju])
        movies.append(np.full(iu.size, idx, np.int32))
    if us:
        u, v, m = np.concatenate(us), np.concatenate(vs), np.concatenate(movies)
    else:
        u = v = m = np.empty(0, np.int32)
    titles = [rec.title for rec in records]
    return CoStarGraph.from_pairs(len(table), u, v, m, titles), table
