"""Gallai colorings: construction, verification, decomposition and search.

A Gallai coloring is an edge-coloring of a complete graph with no rainbow
triangle. This package builds the known extremal colorings, verifies their
properties, decomposes colorings into Gallai partitions, and decides by
exhaustive isomorph-rejecting search whether every K_p in every
Gallai-k-coloring of K_n must receive at most q colors.
"""

from .coloring import (
    EdgeColoring,
    RainbowTriangleWitness,
    color_degree,
    colors_on_subset,
    find_dense_color_neighborhood,
    from_json_obj,
    from_text,
    induced_subcoloring,
    is_gallai,
    make_coloring,
    min_colors_over_p_subsets,
    to_dot,
    to_json,
    to_json_obj,
    to_text,
    unify_colors,
)
from .constructions import (
    ConstructionCertificate,
    appendix_a_k7,
    appendix_b_k9,
    conjecture_extremal,
    iterated_self_substitution,
    join_copies,
    p5_tower,
    remark_p7,
    staircase,
    staircase_tail,
    substitution_product,
)
from .partition import (
    GallaiPartition,
    external_color_check,
    find_gallai_partition,
    find_min_parts_partition,
    spanning_connected_color,
    verify_partition,
)
from .search import (
    GValue,
    SearchOutcome,
    SearchProblem,
    SearchStats,
    canonical_key,
    compute_g,
    enumerate_colorings,
    exists_good_coloring,
    naive_exists_good_coloring,
)

__version__ = "0.1.0"
