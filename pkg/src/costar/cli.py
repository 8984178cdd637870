"""Command-line entry point: ``costar <command> [input] [options]``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import TextIO

from . import centrality, ingest, paths, reports, snapshot
from .centrality import CentralityVector
from .components import connected_components, is_connected, largest_component
from .graph import ActorTable, CoStarGraph, build_graph
from .reports import RankedTable

_log = logging.getLogger("costar")

FORMATS = ("tsv", "json", "table", "longtable")
RECORD_COMMANDS = {"stats", "hist-years", "hist-cast", "top-cast", "decade-report"}
NAMED_COMMANDS = {"path": 2, "hops": 1}


class UsageError(Exception):
    pass


def _fmt(value) -> str:
    return repr(value) if isinstance(value, float) else str(value)


# --- emitters -----------------------------------------------------------------


def emit_pairs(out: TextIO, fmt: str, rows: list[tuple], header: tuple[str, str]) -> None:
    if fmt == "json":
        json.dump([list(r) for r in rows], out)
        out.write("\n")
    elif fmt == "table":
        for a, b in rows:
            out.write(f"{a} = {b}\n")
    else:
        out.write(f"{header[0]}\t{header[1]}\n")
        for a, b in rows:
            out.write(f"{a}\t{b}\n")


def emit_ranked(out: TextIO, fmt: str, tab: RankedTable) -> None:
    if fmt == "json":
        json.dump(
            {
                "title": tab.title,
                "provenance": tab.provenance,
                "rows": [{"rank": i, "label": label, "value": value} for i, (label, value) in enumerate(tab.rows, 1)],
            },
            out,
        )
        out.write("\n")
    elif fmt == "table":
        for label, value in tab.rows:
            out.write(f"{label} : {value}\n")
    elif fmt == "longtable":
        for i, (label, value) in enumerate(tab.rows, 1):
            shown = f"{value:.5f}" if isinstance(value, float) else str(value)
            out.write(f"{i}\t&\t{label}\t&\t{shown}\t\\\\\n")
    else:
        out.write(f"# {tab.title}\n")
        for i, (label, value) in enumerate(tab.rows, 1):
            out.write(f"{i}\t{label}\t{_fmt(value)}\n")


def emit_vector(out: TextIO, fmt: str, vec: CentralityVector, table: ActorTable, top: int) -> None:
    ranked = vec.ranked(table, top)
    hops = vec.extra.get("mean_hops")
    hop_of = dict(zip(vec.ids.tolist(), hops.tolist())) if hops is not None else {}
    meta = vec.metadata()
    if fmt == "json":
        rows = []
        for i, (v, score) in enumerate(ranked, 1):
            row = {"rank": i, "actor": table.name(v), "score": score}
            if hops is not None:
                row["mean_hops"] = hop_of[v]
            rows.append(row)
        json.dump({"meta": meta, "rows": rows}, out)
        out.write("\n")
    elif fmt == "table":
        for v, score in ranked:
            out.write(f"{table.name(v)} : {score}\n")
    elif fmt == "longtable":
        for i, (v, score) in enumerate(ranked, 1):
            shown = f"{hop_of[v]:.3f}" if hops is not None else f"{score:.5f}"
            out.write(f"{i}\t&\t{table.name(v)}\t&\t{shown}\t\\\\\n")
    else:
        out.write("# " + " ".join(f"{k}={v}" for k, v in meta.items()) + "\n")
        out.write("rank\tactor\tscore" + ("\tmean_hops" if hops is not None else "") + "\n")
        for i, (v, score) in enumerate(ranked, 1):
            line = f"{i}\t{table.name(v)}\t{score!r}"
            if hops is not None:
                line += f"\t{hop_of[v]!r}"
            out.write(line + "\n")


# --- loading ------------------------------------------------------------------


def _require_file(path: str | None) -> Path:
    if path is None:
        raise UsageError("an input file is required")
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(f"input file not found: {path}")
    return p


def load_records(path: str | None) -> tuple[list[ingest.MovieRecord], ingest.CleaningReport]:
    return ingest.load_clean(_require_file(path))


def load_graph(args) -> tuple[CoStarGraph, ActorTable]:
    if args.snapshot:
        return snapshot.load_file(_require_file(args.snapshot))
    records, _ = load_records(args.input)
    return build_graph(records)


def load_component(args) -> tuple[CoStarGraph, ActorTable]:
    g, table = load_graph(args)
    sub, remap = largest_component(g)
    return sub, table.subset(remap)


# --- commands -----------------------------------------------------------------


def cmd_stats(args, out):
    records, malformed = ingest.read_records(_require_file(args.input))
    _, report = ingest.clean(records, malformed)
    if args.format == "json":
        json.dump(report.to_dict(), out)
        out.write("\n")
    else:
        emit_pairs(out, "table" if args.format == "table" else "tsv", list(report.to_dict().items()), ("field", "count"))


def cmd_hist_years(args, out):
    records, _ = load_records(args.input)
    emit_pairs(out, args.format, ingest.movies_per_year(records).items(), ("year", "count"))


def cmd_hist_cast(args, out):
    records, _ = load_records(args.input)
    emit_pairs(out, args.format, ingest.cast_size_histogram(records).items(), ("cast_size", "count"))


def cmd_top_cast(args, out):
    records, _ = load_records(args.input)
    rows = ingest.top_by_cast_size(records, args.top)
    emit_ranked(out, args.format, RankedTable("Largest Casts", rows))


def cmd_build(args, out):
    if args.snapshot:
        raise UsageError("build writes a snapshot; use --output, not --snapshot")
    g, table = load_graph(args)
    if args.output:
        snapshot.save_file(g, table, args.output)
    rows = [
        ("nodes", g.n),
        ("multi_edges", g.num_multi_edges),
        ("simple_edges", g.num_simple_edges),
        ("connected", is_connected(g)),
    ]
    if args.format == "json":
        json.dump(dict(rows), out)
        out.write("\n")
    else:
        emit_pairs(out, "table" if args.format == "table" else "tsv", rows, ("field", "value"))


def cmd_components(args, out):
    g, _ = load_graph(args)
    comps = connected_components(g)
    sizes = comps.sizes.tolist()
    if args.format == "json":
        json.dump(sizes, out)
        out.write("\n")
    elif args.format == "table":
        out.write(f"Number of components = {comps.count}\n")
        out.write(f"Component sizes      = {sizes}\n")
    else:
        out.write(f"# components={comps.count}\n")
        for i, size in enumerate(sizes):
            out.write(f"{i}\t{size}\n")


def cmd_top_actors(args, out):
    g, table = load_graph(args)
    emit_ranked(out, args.format, reports.movies_per_actor(g, table, args.top))


def cmd_top_pairs(args, out):
    g, table = load_graph(args)
    emit_ranked(out, args.format, reports.top_partnerships(g, table, args.top))


def cmd_path(args, out):
    g, table = load_graph(args)
    u, v = args.names
    if args.format == "json":
        try:
            expl = paths.shortest_path(g, table, u, v)
            payload = {"from": u, "to": v, "length": len(expl), "hops": [list(h) for h in expl.hops]}
        except LookupError as exc:
            payload = {"from": u, "to": v, "error": str(exc)}
        json.dump(payload, out)
        out.write("\n")
        return
    out.write(f"Here is the shortest path from {u} to {v}\n")
    try:
        expl = paths.shortest_path(g, table, u, v)
    except paths.NotInNetwork as exc:
        out.write(f"  Error: {exc}\n")
        return
    except paths.NoPath as exc:
        out.write(f"  {exc}\n")
        return
    for sentence in expl.sentences():
        out.write(f"  {sentence}\n")


def cmd_hops(args, out):
    g, table = load_graph(args)
    (name,) = args.names
    source = table.get(name)
    if source is None:
        raise LookupError(f"{name} is not in the network")
    dist = paths.hop_distribution(g, source)
    emit_pairs(out, args.format, sorted(dist.items()), ("hops", "actors"))


def cmd_degree(args, out):
    g, table = load_component(args)
    emit_vector(out, args.format, centrality.degree_centrality(g), table, args.top)


def _timed(fn, *a, **kw):
    start = time.perf_counter()
    result = fn(*a, **kw)
    print(f"Time taken = {time.perf_counter() - start} seconds", file=sys.stderr)
    return result


def _betweenness(args, g):
    if args.exact:
        return _timed(centrality.betweenness_exact, g, args.workers)
    return _timed(centrality.betweenness_sampled, g, args.k, args.seed, args.workers)


def cmd_betweenness(args, out):
    g, table = load_component(args)
    emit_vector(out, args.format, _betweenness(args, g), table, args.top)


def cmd_closeness(args, out):
    g, table = load_component(args)
    btw = _betweenness(args, g)
    candidates = [v for v, _ in btw.ranked(table, args.limit)]
    vec = _timed(centrality.closeness_top, g, candidates, args.limit, args.workers)
    emit_vector(out, args.format, vec, table, args.top)


def cmd_sample_closeness(args, out):
    g, _ = load_component(args)
    stats = centrality.closeness_sample_stats(g, args.sample, args.seed, args.workers)
    bins = [
        (float(lo), float(hi), int(c))
        for lo, hi, c in zip(stats.hist_edges[:-1], stats.hist_edges[1:], stats.hist_counts)
    ]
    if args.format == "json":
        json.dump(
            {"sample_size": stats.sample_size, "seed": args.seed, "mean": stats.mean, "sd": stats.sd, "histogram": bins},
            out,
        )
        out.write("\n")
    elif args.format == "table":
        out.write(f"Mean = {stats.mean}\nSD   = {stats.sd}\n")
    else:
        out.write(f"# sample_size={stats.sample_size} seed={args.seed}\n")
        out.write(f"mean\t{stats.mean!r}\nsd\t{stats.sd!r}\n")
        out.write("bin_low\tbin_high\tcount\n")
        for lo, hi, c in bins:
            out.write(f"{lo!r}\t{hi!r}\t{c}\n")


def cmd_decade_report(args, out):
    if args.decade is None:
        raise UsageError("decade-report needs --decade")
    records, _ = load_records(args.input)
    tables = reports.decade_report(
        records, args.decade, k=args.k, seed=args.seed, limit=args.limit, top=args.top, workers=args.workers
    )
    if args.format == "json":
        json.dump(
            {
                name: {
                    "title": t.title,
                    "provenance": t.provenance,
                    "rows": [{"rank": i, "label": lab, "value": val} for i, (lab, val) in enumerate(t.rows, 1)],
                }
                for name, t in tables.items()
            },
            out,
        )
        out.write("\n")
        return
    for t in tables.values():
        emit_ranked(out, args.format, t)


COMMANDS = {
    "stats": cmd_stats,
    "hist-years": cmd_hist_years,
    "hist-cast": cmd_hist_cast,
    "top-cast": cmd_top_cast,
    "build": cmd_build,
    "components": cmd_components,
    "top-actors": cmd_top_actors,
    "top-pairs": cmd_top_pairs,
    "path": cmd_path,
    "hops": cmd_hops,
    "degree": cmd_degree,
    "betweenness": cmd_betweenness,
    "closeness": cmd_closeness,
    "sample-closeness": cmd_sample_closeness,
    "decade-report": cmd_decade_report,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="tsv")
    common.add_argument("--top", type=int, default=None, help="rows to print (default 5; 20 for decade-report)")
    common.add_argument("--k", type=int, default=1000, help="betweenness pivot count")
    common.add_argument("--seed", type=int, default=centrality.DEFAULT_SEED)
    common.add_argument("--workers", type=int, default=None, help=f"thread count (env {centrality.WORKERS_ENV})")
    common.add_argument("--decade", type=int, default=None)
    common.add_argument("--snapshot", default=None, help="load a graph written by 'build --output'")
    common.add_argument("--limit", type=int, default=1000, help="closeness candidates taken from the betweenness ranking")
    common.add_argument("--sample", type=int, default=1000, help="actors sampled by sample-closeness")
    common.add_argument("--exact", action="store_true", help="exact betweenness instead of pivot sampling")
    common.add_argument("--output", "-o", default=None, help="snapshot path for build")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="costar", description="Co-star network analysis.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name in NAMED_COMMANDS:
            p.add_argument("args", nargs="+", metavar="INPUT/NAME", help="input file (unless --snapshot) then actor names")
        else:
            p.add_argument("input", nargs="?")
    return parser


def _resolve(args) -> None:
    if args.command in NAMED_COMMANDS:
        want = NAMED_COMMANDS[args.command]
        positional = list(args.args)
        args.input = None if args.snapshot else (positional.pop(0) if positional else None)
        if len(positional) != want:
            raise UsageError(f"{args.command} takes an input file and {want} actor name(s)")
        args.names = positional
    if args.snapshot and args.input:
        raise UsageError("give either an input file or --snapshot, not both")
    if args.snapshot and args.command in RECORD_COMMANDS:
        raise UsageError(f"{args.command} needs the record file; --snapshot is not supported")
    if args.decade is not None and args.command != "decade-report":
        raise UsageError("--decade only applies to decade-report")
    if args.decade is not None and args.decade % 10:
        raise UsageError("--decade must be a multiple of 10")
    if args.output and args.command != "build":
        raise UsageError("--output only applies to build")
    if args.exact and args.command not in {"betweenness", "closeness"}:
        raise UsageError("--exact only applies to betweenness and closeness")
    if args.k < 1:
        raise UsageError("--k must be at least 1")
    if args.workers is not None and args.workers < 1:
        raise UsageError("--workers must be at least 1")
    if args.top is None:
        args.top = 20 if args.command == "decade-report" else 5
    if args.top < 0:
        raise UsageError("--top must be non-negative")
    args.workers = args.workers or centrality.default_workers()


def main(argv: list[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        _resolve(args)
        COMMANDS[args.command](args, out)
    except UsageError as exc:
        parser.error(str(exc))
    except FileNotFoundError as exc:
        print(f"costar: {exc}", file=sys.stderr)
        return 2
    except (LookupError, ValueError, snapshot.SnapshotError) as exc:
        print(f"costar: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
