"""Compiled traversal kernels over CSR adjacency arrays.

All kernels take ``indptr`` (int64, n+1) and ``indices`` (int32, sorted per
row) and allocate their own scratch, so they are safe to run concurrently
from several threads (they release the GIL).
"""

import numpy as np
from numba import njit

_JIT = dict(cache=True, nogil=True)


@njit(**_JIT)
def bfs_distances(indptr, indices, source):
    """Hop distance from ``source`` to every node (-1 where unreachable)."""
    n = indptr.shape[0] - 1
    dist = np.full(n, -1, np.int32)
    queue = np.empty(n, np.int32)
    dist[source] = 0
    queue[0] = source
    head, tail = 0, 1
    while head < tail:
        v = queue[head]
        head += 1
        dv = dist[v] + 1
        for j in range(indptr[v], indptr[v + 1]):
            w = indices[j]
            if dist[w] < 0:
                dist[w] = dv
                queue[tail] = w
                tail += 1
    return dist


@njit(**_JIT)
def bfs_parents(indptr, indices, source, target):
    """BFS tree from ``source``, stopping once ``target`` is discovered.

    Neighbours are scanned in stored (ascending id) order, so each node's
    parent is its lowest-id predecessor on the earliest BFS frontier.
    Unreached nodes have parent -1; the source is its own parent.
    """
    n = indptr.shape[0] - 1
    parent = np.full(n, -1, np.int32)
    queue = np.empty(n, np.int32)
    parent[source] = source
    queue[0] = source
    head, tail = 0, 1
    while head < tail:
        v = queue[head]
        head += 1
        for j in range(indptr[v], indptr[v + 1]):
            w = indices[j]
            if parent[w] < 0:
                parent[w] = v
                if w == target:
                    return parent
                queue[tail] = w
                tail += 1
    return parent


@njit(**_JIT)
def distance_sum(indptr, indices, source):
    """Return (sum of hop distances, number of nodes reached) from ``source``."""
    dist = bfs_distances(indptr, indices, source)
    total = 0
    reached = 0
    for d in dist:
        if d >= 0:
            total += d
            reached += 1
    return total, reached


@njit(**_JIT)
def brandes_dependencies(indptr, indices, source):
    """Single-source dependency vector delta_s(v).

    delta_s(v) = sum over t of sigma(s,t|v)/sigma(s,t), accumulated in
    reverse BFS order. delta_s(s) is left at zero.
    """
    n = indptr.shape[0] - 1
    dist = np.full(n, -1, np.int32)
    sigma = np.zeros(n, np.float64)
    delta = np.zeros(n, np.float64)
    order = np.empty(n, np.int32)
    dist[source] = 0
    sigma[source] = 1.0
    order[0] = source
    head, tail = 0, 1
    while head < tail:
        v = order[head]
        head += 1
        dv = dist[v] + 1
        for j in range(indptr[v], indptr[v + 1]):
            w = indices[j]
            if dist[w] < 0:
                dist[w] = dv
                order[tail] = w
                tail += 1
            if dist[w] == dv:
                sigma[w] += sigma[v]
    for i in range(tail - 1, 0, -1):
        v = order[i]
        dv = dist[v] + 1
        acc = 0.0
        for j in range(indptr[v], indptr[v + 1]):
            w = indices[j]
            if dist[w] == dv:
                acc += sigma[v] / sigma[w] * (1.0 + delta[w])
        delta[v] = acc
    return delta


@njit(**_JIT)
def brandes_batch(indptr, indices, sources):
    """Dependency vectors for several sources, one row per source."""
    n = indptr.shape[0] - 1
    out = np.empty((sources.shape[0], n), np.float64)
    for i in range(sources.shape[0]):
        out[i] = brandes_dependencies(indptr, indices, sources[i])
    return out


@njit(**_JIT)
def distance_sums(indptr, indices, sources):
    totals = np.empty(sources.shape[0], np.int64)
    reached = np.empty(sources.shape[0], np.int64)
    for i in range(sources.shape[0]):
        totals[i], reached[i] = distance_sum(indptr, indices, sources[i])
    return totals, reached


@njit(**_JIT)
def union_find_labels(indptr, indices):
    """Root label per node via union-find with path halving and union by size."""
    n = indptr.shape[0] - 1
    parent = np.arange(n).astype(np.int64)
    size = np.ones(n, np.int64)
    for u in range(n):
        for j in range(indptr[u], indptr[u + 1]):
            v = indices[j]
            if v <= u:
                continue
            a = u
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            b = v
            while parent[b] != b:
                parent[b] = parent[parent[b]]
                b = parent[b]
            if a == b:
                continue
            if size[a] < size[b]:
                a, b = b, a
            parent[b] = a
            size[a] += size[b]
    for u in range(n):
        a = u
        while parent[a] != a:
            a = parent[a]
        parent[u] = a
    return parent
