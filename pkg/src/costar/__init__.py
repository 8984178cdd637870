"""Co-star network analysis: ingest movie casts, build the actor graph,
and rank actors by degree, betweenness and closeness centrality."""

from .centrality import (
    CentralityVector,
    SampleStats,
    betweenness_exact,
    betweenness_sampled,
    closeness,
    closeness_sample_stats,
    closeness_top,
    degree_centrality,
)
from .components import ComponentLabeling, connected_components, is_connected, largest_component
from .graph import ActorTable, CoStarGraph, build_graph
from .ingest import (
    CleaningReport,
    Histogram,
    MovieRecord,
    cast_size_histogram,
    clean,
    filter_by_decade,
    load_clean,
    movies_per_year,
    parse_records,
    top_by_cast_size,
)
from .paths import NoPath, NotInNetwork, PathExplanation, hop_distribution, shortest_path
from .reports import RankedTable, decade_report, movies_per_actor, top_partnerships

__version__ = "0.1.0"
