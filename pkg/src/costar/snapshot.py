"""Binary snapshot of a built graph and its actor table.

Layout (little-endian):

    magic     8 bytes  b"COSTARG\\0"
    version   u32
    n, n_adj, n_edge_movies, n_names, n_titles   5 x u64
    indptr        int64[n + 1]
    indices       int32[n_adj]
    edge_ptr      int64[n_adj + 1]
    edge_movies   int32[n_edge_movies]
    name lengths  u32[n_names], then the UTF-8 name bytes
    title lengths u32[n_titles], then the UTF-8 title bytes

Writing is a pure function of the arrays, so save -> load -> save is
byte-identical.
"""

from __future__ import annotations

import struct
from pathlib import Path
from typing import BinaryIO

import numpy as np

from .graph import ActorTable, CoStarGraph

MAGIC = b"COSTARG\0"
VERSION = 1
_HEADER = struct.Struct("<8sI5Q")


class SnapshotError(ValueError):
    pass


def _write_strings(f: BinaryIO, strings: list[str]) -> None:
    encoded = [s.encode("utf-8") for s in strings]
    f.write(np.fromiter((len(b) for b in encoded), "<u4", len(encoded)).tobytes())
    f.write(b"".join(encoded))


def _read_exact(f: BinaryIO, size: int) -> bytes:
    data = f.read(size)
    if len(data) != size:
        raise SnapshotError("snapshot is truncated")
    return data


def _read_array(f: BinaryIO, dtype: str, count: int) -> np.ndarray:
    dt = np.dtype(dtype)
    return np.frombuffer(_read_exact(f, dt.itemsize * count), dt, count)


def _read_strings(f: BinaryIO, count: int) -> list[str]:
    lengths = _read_array(f, "<u4", count).astype(np.int64)
    blob = _read_exact(f, int(lengths.sum()))
    ends = np.cumsum(lengths).tolist()
    starts = [0] + ends[:-1]
    return [blob[a:b].decode("utf-8") for a, b in zip(starts, ends)]


def dump(g: CoStarGraph, table: ActorTable, f: BinaryIO) -> None:
    f.write(_HEADER.pack(MAGIC, VERSION, g.n, g.indices.size, g.edge_movies.size, len(table), len(g.titles)))
    f.write(g.indptr.astype("<i8").tobytes())
    f.write(g.indices.astype("<i4").tobytes())
    f.write(g.edge_ptr.astype("<i8").tobytes())
    f.write(g.edge_movies.astype("<i4").tobytes())
    _write_strings(f, table.names)
    _write_strings(f, g.titles)


def load(f: BinaryIO) -> tuple[CoStarGraph, ActorTable]:
    magic, version, n, n_adj, n_movies, n_names, n_titles = _HEADER.unpack(_read_exact(f, _HEADER.size))
    if magic != MAGIC:
        raise SnapshotError("not a co-star graph snapshot")
    if version != VERSION:
        raise SnapshotError(f"unsupported snapshot version {version}")
    indptr = _read_array(f, "<i8", n + 1)
    indices = _read_array(f, "<i4", n_adj)
    edge_ptr = _read_array(f, "<i8", n_adj + 1)
    edge_movies = _read_array(f, "<i4", n_movies)
    table = ActorTable(_read_strings(f, n_names))
    titles = _read_strings(f, n_titles)
    return CoStarGraph(indptr, indices, edge_ptr, edge_movies, titles), table


def save_file(g: CoStarGraph, table: ActorTable, path: str | Path) -> None:
    with open(path, "wb") as f:
        dump(g, table, f)


def load_file(path: str | Path) -> tuple[CoStarGraph, ActorTable]:
    with open(path, "rb") as f:
        return load(f)
