"""Interval edge-colourings: exact solvers, thickness decompositions,
non-colourability certificates and extremal constructions."""

from .bounds import check_sparsity, check_t_bounds
from .certificates import (
    NonColourabilityCertificate,
    check_certificate,
    degree_sum_distance,
    search_certificate,
)
from .colouring import (
    SolveOptions,
    SolveResult,
    Status,
    decide_interval_colourable,
    max_palette,
    split_at_unique_colour,
    t_max,
    verify_alpha_interval,
    verify_interval,
)
from .decompose import (
    Decomposition,
    PipelineConfig,
    ThicknessResult,
    colour_forest,
    colour_regular_bipartite,
    decompose_pipeline,
    find_regular_bipartite,
    forest_decomposition,
    theta_exact,
    theta_upper,
)
from .generators import (
    ExtremalSpec,
    LowerBoundSpec,
    UnionSpec,
    check_star_property,
    gen_extremal,
    gen_lower_bound_layer,
    gen_standard,
    gen_union,
)
from .graph import (
    Bipartition,
    EdgeSubset,
    Graph,
    bipartition,
    components,
    load_graph,
    max_cut_bipartite_subgraph,
    subgraph,
)

__version__ = "0.1.0"

__all__ = [
    "Bipartition",
    "Decomposition",
    "EdgeSubset",
    "ExtremalSpec",
    "Graph",
    "LowerBoundSpec",
    "NonColourabilityCertificate",
    "PipelineConfig",
    "SolveOptions",
    "SolveResult",
    "Status",
    "ThicknessResult",
    "UnionSpec",
    "bipartition",
    "check_certificate",
    "check_sparsity",
    "check_star_property",
    "check_t_bounds",
    "colour_forest",
    "colour_regular_bipartite",
    "components",
    "decide_interval_colourable",
    "decompose_pipeline",
    "degree_sum_distance",
    "find_regular_bipartite",
    "forest_decomposition",
    "gen_extremal",
    "gen_lower_bound_layer",
    "gen_standard",
    "gen_union",
    "load_graph",
    "max_cut_bipartite_subgraph",
    "max_palette",
    "search_certificate",
    "split_at_unique_colour",
    "subgraph",
    "t_max",
    "theta_exact",
    "theta_upper",
    "verify_alpha_interval",
    "verify_interval",
]
