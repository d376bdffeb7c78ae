"""Matching book embeddings of Cartesian products of cycles."""

from ._core import (
    BookEmbedding,
    CyclicLayout,
    Graph,
    MbookError,
    cartesian_product,
    certify_family,
    color_search,
    complete,
    cycle,
    decode_cnf_model,
    draw_svg,
    edges_conflict,
    export_cnf,
    extend,
    fixture,
    fixture_names,
    from_json,
    is_bipartite,
    is_extensible,
    is_regular,
    max_degree,
    mbt_exact,
    mbt_lower_bound,
    resolve_graph,
    search_extensible,
    seed_report,
    to_json,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
