"""Spectral graph sparsification, seeded layout, and proxy-quality metrics."""

from ._sparsedraw import (
    Graph,
    commute_distance,
    connected_components,
    content_hash,
    effective_resistance,
    emst,
    gabriel,
    generate_blackhole,
    generate_grid,
    generate_scale_free,
    jaccard_quality,
    laplacian,
    largest_component,
    layout_fr,
    layout_multilevel,
    load_edge_list,
    load_matrix_market,
    pseudoinverse,
    quality_ratio,
    relative_density,
    rng,
    save_edge_list,
    sparsify,
    spectral_epsilon,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "commute_distance",
    "connected_components",
    "content_hash",
    "effective_resistance",
    "emst",
    "gabriel",
    "generate_blackhole",
    "generate_grid",
    "generate_scale_free",
    "jaccard_quality",
    "laplacian",
    "largest_component",
    "layout_fr",
    "layout_multilevel",
    "load_edge_list",
    "load_matrix_market",
    "pseudoinverse",
    "quality_ratio",
    "relative_density",
    "rng",
    "save_edge_list",
    "sparsify",
    "spectral_epsilon",
]
