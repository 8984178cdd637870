"""Connected components of the simple-graph view."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import CoStarGraph


@dataclass
class ComponentLabeling:
    """Component id per node.

    Ids run from 0 in order of descending component size; equal sizes are
    ordered by the smallest node id they contain.
    """

    labels: np.ndarray
    sizes: np.ndarray

    @property
    def count(self) -> int:
        return int(self.sizes.size)

    def members(self, component: int) -> np.ndarray:
        return np.flatnonzero(self.labels == component)


def connected_components(g: CoStarGraph) -> ComponentLabeling:
    n = g.n
    if n == 0:
        return ComponentLabeling(np.empty(0, np.int64), np.empty(0, np.int64))
    roots = _kernels.union_find_labels(g.indptr, g.indices)
    # np.unique on first occurrence gives each root's smallest member id
    uniq, first, raw = np.unique(roots, return_index=True, return_inverse=True)
    sizes = np.bincount(raw)
    order = np.lexsort((first, -sizes))
    rank = np.empty_like(order)
    rank[order] = np.arange(order.size)
    return ComponentLabeling(rank[raw], sizes[order])


def largest_component(g: CoStarGraph) -> tuple[CoStarGraph, np.ndarray]:
    """Induced subgraph on the largest component, plus the id remapping."""
    if g.n == 0:
        raise ValueError("the graph is empty")
    comps = connected_components(g)
    return g.subgraph(comps.members(0))


def is_connected(g: CoStarGraph) -> bool:
    if g.n == 0:
        return False
    return connected_components(g).count == 1
