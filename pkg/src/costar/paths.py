"""Shortest co-star paths with movie explanations, and BFS hop counts."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .graph import ActorTable, CoStarGraph


class NotInNetwork(LookupError):
    def __init__(self, u: str, v: str):
        super().__init__(f"{u} and/or {v} are not in the network")
        self.u, self.v = u, v


class NoPath(LookupError):
    def __init__(self, u: str, v: str):
        super().__init__(f"No path exists between {u} and {v}")
        self.u, self.v = u, v


@dataclass
class PathExplanation:
    """Hops of (from actor, movie title, to actor)."""

    hops: list[tuple[str, str, str]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.hops)

    def sentences(self) -> list[str]:
        return [f"{a} was in {title} with {b}" for a, title, b in self.hops]


def path_nodes(g: CoStarGraph, u: int, v: int) -> list[int] | None:
    """Node ids of a minimum-hop path from ``u`` to ``v``, or None if unreachable."""
    if u == v:
        return [u]
    parent = _kernels.bfs_parents(g.indptr, g.indices, u, v)
    if parent[v] < 0:
        return None
    nodes = [v]
    while nodes[-1] != u:
        nodes.append(int(parent[nodes[-1]]))
    nodes.reverse()
    return nodes


def shortest_path(g: CoStarGraph, table: ActorTable, u: str, v: str) -> PathExplanation:
    """Explain a shortest path between two actors by name.

    Each hop reports the first movie (in record order) shared by its two
    actors.

    Raises:
        NotInNetwork: either name has no node in the graph.
        NoPath: the actors lie in different components.
    """
    su, sv = table.get(u), table.get(v)
    if su is None or sv is None:
        raise NotInNetwork(u, v)
    nodes = path_nodes(g, su, sv)
    if nodes is None:
        raise NoPath(u, v)
    return PathExplanation(
        [(table.name(a), g.first_title(a, b), table.name(b)) for a, b in zip(nodes, nodes[1:])]
    )


def distances(g: CoStarGraph, source: int) -> np.ndarray:
    return _kernels.bfs_distances(g.indptr, g.indices, source)


def hop_distribution(g: CoStarGraph, source: int) -> dict[int, int]:
    """Number of nodes at each hop distance from ``source`` (itself at 0)."""
    if not 0 <= source < g.n:
        raise IndexError(f"node {source} out of range")
    dist = distances(g, source)
    counts = np.bincount(dist[dist >= 0])
    return {d: int(c) for d, c in enumerate(counts.tolist()) if c}
