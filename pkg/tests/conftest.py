import json
import random
from pathlib import Path

import numpy as np
import pytest

from costar import _kernels
from costar.graph import CoStarGraph, build_graph
from costar.ingest import MovieRecord, load_clean

DATA = Path(__file__).parent / "data"
BATMAN = DATA / "batman.jsonl"

_acceptance_results = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, text): exit criterion")
    # compile (or load cached) kernels once so timed tests measure the algorithms
    tiny = CoStarGraph.from_edges(3, [(0, 1), (1, 2)])
    _kernels.brandes_batch(tiny.indptr, tiny.indices, np.arange(3))
    _kernels.distance_sums(tiny.indptr, tiny.indices, np.arange(3))
    _kernels.bfs_parents(tiny.indptr, tiny.indices, 0, 2)
    _kernels.union_find_labels(tiny.indptr, tiny.indices)


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None or call.when not in ("setup", "call"):
        return
    if call.when == "setup" and call.excinfo is None:
        return
    if call.excinfo is None:
        status = "PASS"
    elif call.excinfo.errisinstance(pytest.skip.Exception):
        status = "SKIP"
    else:
        status = "FAIL"
    _acceptance_results.append((marker.args[0], status, marker.args[1]))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for number, status, text in sorted(_acceptance_results):
        terminalreporter.write_line(f"criterion {number}: {status}  {text}")


@pytest.fixture(scope="session")
def batman_records():
    records, _ = load_clean(BATMAN)
    return records


@pytest.fixture(scope="session")
def batman(batman_records):
    return build_graph(batman_records)


def random_movies(rng: random.Random, n_movies: int, pool: int, max_cast: int = 8, year=(1950, 2019)):
    """Synthetic cleaned records drawing casts from a pool of ``pool`` names."""
    movies = []
    for i in range(n_movies):
        size = rng.randint(1, max_cast)
        cast = tuple(f"Actor {rng.randrange(pool)}" for _ in range(size))
        movies.append(MovieRecord(f"Movie {i % (n_movies // 2 + 1)}", cast, rng.randint(*year)))
    return movies


def write_jsonl(path: Path, records) -> Path:
    with open(path, "w", encoding="utf-8") as f:
        for r in records:
            f.write(json.dumps({"title": r.title, "cast": list(r.cast), "year": r.year}) + "\n")
    return path
