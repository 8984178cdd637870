"""Reading and cleaning JSON-lines movie records.

Each input line is one JSON object with a ``title``, an optional ``cast``
list and an optional integer ``year``; anything else on the line is ignored.
"""

from __future__ import annotations

import json
import logging
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import IO, Iterable

_log = logging.getLogger(__name__)


@dataclass(frozen=True)
class MovieRecord:
    title: str
    cast: tuple[str, ...]
    year: int | None = None


@dataclass
class CleaningReport:
    raw_count: int = 0
    dropped_no_cast: int = 0
    dropped_no_year: int = 0
    retained: int = 0
    malformed_lines: int = 0

    def to_dict(self) -> dict[str, int]:
        return asdict(self)


@dataclass
class Histogram:
    """Frequency counts keyed by an integer (a year or a cast size)."""

    bins: dict[int, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.bins.values())

    def items(self) -> list[tuple[int, int]]:
        return sorted(self.bins.items())


def _coerce_year(value) -> int | None:
    # bool is an int subclass; true/false are not years
    if isinstance(value, bool) or not isinstance(value, int):
        return None
    return value


def _coerce_cast(value) -> tuple[str, ...]:
    if not isinstance(value, list):
        return ()
    return tuple(name for name in value if isinstance(name, str))


def parse_line(line: str | bytes) -> MovieRecord | None:
    """Parse one line, returning ``None`` if it is not a usable record."""
    try:
        obj = json.loads(line)
    except ValueError:
        return None
    if not isinstance(obj, dict):
        return None
    title = obj.get("title")
    if not isinstance(title, str):
        return None
    return MovieRecord(title, _coerce_cast(obj.get("cast")), _coerce_year(obj.get("year")))


def parse_records(stream: IO[bytes] | IO[str] | Iterable[str | bytes]) -> tuple[list[MovieRecord], int]:
    """Parse a JSON-lines stream into records.

    Blank lines are skipped silently. Lines that are not JSON objects carrying
    a string ``title`` are counted as malformed and skipped.

    Returns:
        The records in line order and the number of malformed lines.
    """
    records: list[MovieRecord] = []
    malformed = 0
    for lineno, line in enumerate(stream, 1):
        if not line.strip():
            continue
        rec = parse_line(line)
        if rec is None:
            malformed += 1
            _log.debug("skipping malformed line %d", lineno)
            continue
        records.append(rec)
    return records, malformed


def read_records(path: str | Path) -> tuple[list[MovieRecord], int]:
    with open(path, "rb") as f:
        return parse_records(f)


def clean(records: Iterable[MovieRecord], malformed: int = 0) -> tuple[list[MovieRecord], CleaningReport]:
    """Drop records with no cast, then records with no year.

    A record failing both rules is counted under ``dropped_no_cast`` only.
    ``malformed`` is the count from :func:`parse_records`, carried into the
    report so that its totals add up to the raw line count.
    """
    report = CleaningReport(malformed_lines=malformed)
    kept = []
    for rec in records:
        if not rec.cast:
            report.dropped_no_cast += 1
        elif rec.year is None:
            report.dropped_no_year += 1
        else:
            kept.append(rec)
    report.retained = len(kept)
    report.raw_count = report.retained + report.dropped_no_cast + report.dropped_no_year + malformed
    return kept, report


def load_clean(path: str | Path) -> tuple[list[MovieRecord], CleaningReport]:
    records, malformed = read_records(path)
    return clean(records, malformed)


def movies_per_year(records: Iterable[MovieRecord]) -> Histogram:
    counts = Counter()
    for rec in records:
        if rec.year is None:
            raise ValueError(f"record {rec.title!r} has no year; clean the records first")
        counts[rec.year] += 1
    return Histogram(dict(counts))


def cast_size_histogram(records: Iterable[MovieRecord]) -> Histogram:
    return Histogram(dict(Counter(len(rec.cast) for rec in records)))


def top_by_cast_size(records: list[MovieRecord], n: int) -> list[tuple[str, int]]:
    """The ``n`` records with the largest casts.

    Ties are broken by title, then by input order (the sort is stable).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    ranked = sorted(records, key=lambda r: (-len(r.cast), r.title))
    return [(r.title, len(r.cast)) for r in ranked[:n]]


def filter_by_decade(records: Iterable[MovieRecord], decade: int) -> list[MovieRecord]:
    if decade % 10:
        raise ValueError(f"decade must be a multiple of 10, got {decade}")
    return [r for r in records if r.year is not None and decade <= r.year <= decade + 9]
