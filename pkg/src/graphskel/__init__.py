"""graphskel: graph skeleton extraction from point clouds via persistence.

Pipeline: distance-to-measure weights -> sparse weighted Rips 2-skeleton ->
Z2 persistence pairing -> discrete-Morse style graph reconstruction, with a
brute-force cycle oracle for verification on small instances.
"""

from .complexes import (
    Filtration,
    PersistenceRecord,
    Simplex,
    build_filtration,
    canonicalize,
)
from .builders import (
    DEFAULT_SIMPLEX_BUDGET,
    SparseParams,
    WeightedPointCloud,
    dtm_weights,
    dtm_rips_filtration,
    greedy_permutation,
    lower_star_filtration,
    rips_2skeleton,
    sparse_dtm_rips,
    weighted_edge_value,
)
from .persistence import Diagram, betti, edge_classification, reduce
from .recon import (
    NegativeForest,
    SkeletonGraph,
    build_forest,
    graph_distance,
    reconstruct,
    skeletonize,
    skeletonize_baseline,
    tree_path,
)
from .oracle import (
    check_theorem,
    homology_ranks_bruteforce,
    lex_compare,
    lex_optimal_cycle,
    persistent_cycles,
    run_theorem_suite,
)
from .bottleneck import bottleneck_distance
from .datagen import (
    GeneratorConfig,
    gen_circle,
    gen_two_circles,
    time_delay_embed,
)
from .io import load_points, read_diagram_csv
from .errors import (
    BudgetExceededError,
    DuplicatePointError,
    GraphSkelError,
    InputFormatError,
    ParameterError,
    UndefinedDistanceError,
)

__version__ = "0.1.0"

__all__ = [
    "Filtration",
    "PersistenceRecord",
    "Simplex",
    "build_filtration",
    "canonicalize",
    "DEFAULT_SIMPLEX_BUDGET",
    "SparseParams",
    "WeightedPointCloud",
    "dtm_weights",
    "dtm_rips_filtration",
    "greedy_permutation",
    "lower_star_filtration",
    "rips_2skeleton",
    "sparse_dtm_rips",
    "weighted_edge_value",
    "Diagram",
    "betti",
    "edge_classification",
    "reduce",
    "NegativeForest",
    "SkeletonGraph",
    "build_forest",
    "graph_distance",
    "reconstruct",
    "skeletonize",
    "skeletonize_baseline",
    "tree_path",
    "check_theorem",
    "homology_ranks_bruteforce",
    "lex_compare",
    "lex_optimal_cycle",
    "persistent_cycles",
    "run_theorem_suite",
    "bottleneck_distance",
    "GeneratorConfig",
    "gen_circle",
    "gen_two_circles",
    "time_delay_embed",
    "load_points",
    "read_diagram_csv",
    "BudgetExceededError",
    "DuplicatePointError",
    "GraphSkelError",
    "InputFormatError",
    "ParameterError",
    "UndefinedDistanceError",
]
