"""Finite directed metric spaces, zigzag distances, and space comparison."""

from .extended import INFINITY, ext_abs_diff, ext_close, ext_max, ext_min
from .spaces import (
    DEFAULT_TOL,
    DirectedMetricSpace,
    FiniteDSpace,
    assert_extended_metric,
    compute_reachability,
    compute_zigzag,
    diameter,
    disjoint_union,
    max_triangle_defect,
    product,
    quotient,
    reverse,
    zigzag_from_edges,
)
from .distances import (
    ChainReport,
    Correspondence,
    DistanceReport,
    MapPair,
    SearchBudget,
    VertexMap,
    codistortion,
    dcorrespondence_distance,
    directed_hausdorff,
    distortion_distance,
    distortion_relation,
    gh_distance,
    hausdorff,
    is_disometry,
    map_distortion,
    pair_codistortion,
    verify_chain,
)
from .fileio import (
    SpaceFormatError,
    csv_to_matrix,
    dump_report,
    load_space,
    matrix_to_csv,
    save_space,
)
from .gallery import (
    DEFAULT_STEPS,
    BallGrid,
    GridSpec,
    directed_interval,
    directed_square_grid,
    flat_torus_grid,
    hollow_square,
    label_coords,
    metric_ball,
    open_book,
    sncf_plane,
    source_sink_interval,
    square_grid_graph,
    square_zigzag_oracle,
    step_ratio,
)
from .verify import SUITES, CheckResult, random_space, run_checks

__version__ = "0.1.0"

__all__ = [
    "INFINITY",
    "ext_abs_diff",
    "ext_close",
    "ext_max",
    "ext_min",
    "DEFAULT_TOL",
    "FiniteDSpace",
    "DirectedMetricSpace",
    "assert_extended_metric",
    "max_triangle_defect",
    "compute_zigzag",
    "compute_reachability",
    "zigzag_from_edges",
    "reverse",
    "disjoint_union",
    "product",
    "quotient",
    "diameter",
    "SearchBudget",
    "VertexMap",
    "Correspondence",
    "MapPair",
    "DistanceReport",
    "ChainReport",
    "hausdorff",
    "directed_hausdorff",
    "map_distortion",
    "pair_codistortion",
    "distortion_relation",
    "codistortion",
    "gh_distance",
    "distortion_distance",
    "dcorrespondence_distance",
    "is_disometry",
    "verify_chain",
    "GridSpec",
    "BallGrid",
    "DEFAULT_STEPS",
    "directed_interval",
    "directed_square_grid",
    "square_grid_graph",
    "square_zigzag_oracle",
    "source_sink_interval",
    "flat_torus_grid",
    "open_book",
    "sncf_plane",
    "hollow_square",
    "metric_ball",
    "label_coords",
    "step_ratio",
    "SpaceFormatError",
    "load_space",
    "save_space",
    "matrix_to_csv",
    "csv_to_matrix",
    "dump_report",
    "SUITES",
    "CheckResult",
    "random_space",
    "run_checks",
]
