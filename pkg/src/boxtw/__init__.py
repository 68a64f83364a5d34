"""boxtw: box representations of dimension tw + 2 from tree decompositions."""

from .boxrep import (
    BoxRepresentation,
    IntervalRealization,
    ThetaColoring,
    VerificationReport,
    build_box_representation,
    build_color_interval_graph,
    build_dfs_interval_graph,
    dfs_numbering,
    theta_coloring,
    verify_box_representation,
    verify_supergraph,
)
from .classes import (
    ArcFamily,
    Caterpillar,
    EliminationOrder,
    LinearOrder,
    arc_intersection_graph,
    caterpillar_path_decomposition,
    circular_arc_path_decomposition,
    clique_tree_decomposition,
    cocomparability_path_decomposition,
    lexbfs_peo,
    permutation_cocomp_order,
)
from .decompose import (
    exact_small_treewidth,
    heuristic_decompose,
    small_vc_and_fvs,
    td_from_feedback_vertex_set,
    td_from_vertex_cover,
)
from .errors import (
    BoxTWError,
    InvalidDecompositionError,
    LimitError,
    ParseError,
    PreconditionError,
)
from .families import (
    TightnessInstance,
    complete_kpartite,
    random_chordal,
    random_partial_ktree,
    roberts_graph,
    small_tree_component,
    tightness_instance,
)
from .formats import (
    emit_arcs,
    emit_box,
    emit_caterpillar,
    emit_graph,
    emit_order,
    emit_td,
    parse_arcs,
    parse_box,
    parse_caterpillar,
    parse_graph,
    parse_order,
    parse_td,
)
from .graph import Graph, complement, graph_stats
from .oracle import (
    BoxicityCertificate,
    boxicity_exact_tiny,
    boxicity_upper_search,
    is_interval_graph,
)
from .treedec import (
    NormalizedTreeDecomposition,
    TreeDecomposition,
    ValidationReport,
    normalize,
    validate_td,
)

__version__ = "0.1.0"
