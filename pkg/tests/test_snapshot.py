import io
import random

import pytest

from costar.graph import build_graph
from costar.snapshot import SnapshotError, dump, load, load_file, save_file

from .conftest import random_movies


def roundtrip_bytes(g, table):
    buf = io.BytesIO()
    dump(g, table, buf)
    return buf.getvalue()


def test_batman_roundtrip(batman, tmp_path):
    g, table = batman
    path = tmp_path / "g.bin"
    save_file(g, table, path)
    g2, t2 = load_file(path)
    assert g2 == g and t2 == table
    assert roundtrip_bytes(g2, t2) == path.read_bytes()


@pytest.mark.parametrize("seed", range(5))
def test_random_roundtrip_is_byte_exact(seed):
    records = random_movies(random.Random(seed), 60, 40)
    records.append(records[0].__class__("Ünïcödé ✓", ("Zoë", "José"), 2001))
    g, table = build_graph(records)
    first = roundtrip_bytes(g, table)
    g2, t2 = load(io.BytesIO(first))
    assert roundtrip_bytes(g2, t2) == first
    assert g2.edge_titles(t2.lookup("Zoë"), t2.lookup("José")) == ["Ünïcödé ✓"]


def test_bad_magic_and_truncation(batman):
    with pytest.raises(SnapshotError):
        load(io.BytesIO(b"x" * 64))
    data = roundtrip_bytes(*batman)
    with pytest.raises(SnapshotError):
        load(io.BytesIO(data[:-5]))
