"""Exact separability, reliability and level-of-separability analysis for
stochastic binary systems and all-terminal network models."""

from .allterminal import (
    GraphCategory,
    GraphClass,
    ReliabilityPolynomial,
    classify,
    cycle_edges,
    find_feasible_assignment,
    graph_cost_assignment,
    reliability_closed_form,
    reliability_polynomial,
    utility_and_difficulty,
)
from .dsep import (
    CertificateCheck,
    HyperplaneCertificate,
    LevelResult,
    butterfly_certificate,
    glasses_certificate,
    level_of_separability,
    mincut_certificate,
    monma221_certificate,
    verify_certificate,
)
from .errors import (
    ClassError,
    ConnectivityError,
    DegenerateError,
    DimensionError,
    DomainError,
    ModelError,
    ParseError,
    SepsysError,
    SizeError,
    ValidationError,
    WitnessError,
)
from .formats import (
    parse_certificate,
    parse_graph,
    parse_partition,
    parse_system,
    render_certificate,
    render_graph,
    render_system,
)
from .graph import (
    UndirectedGraph,
    all_terminal_system,
    butterfly,
    complete,
    cycle,
    edge_connectivity,
    global_mincut,
    glasses,
    kissing_cycles,
    minimum_spanning_tree,
    monma,
    mst_cost,
    named_graph,
    path,
    spanning_tree_count,
    star,
    two_cycles_with_path,
)
from .lp import LPResult, solve_lp
from .report import AnalysisReport
from .separability import (
    CostAssignment,
    IntersectionCertificate,
    SeparabilityVerdict,
    assignment_to_hyperplane,
    certificate_is_valid,
    hyperplane_reproduces,
    hyperplane_to_assignment,
    is_separable,
    separability_margin,
    verify_assignment_criterion,
)
from .system import (
    BinarySystem,
    MincutList,
    TruthTable,
    build_sn_family,
    enumerate_mincuts,
    enumerate_minpaths,
    eval_state,
    is_monotone,
    parallel,
    path_cut_inventory,
    reliability,
    series,
    system_from_mincuts,
    truth_table_system,
)
from .threshold import (
    PartitionInstance,
    PartitionResult,
    ThresholdDescription,
    normalize_hyperplane,
    partition_decide,
    partition_reduction,
    threshold_eval,
    threshold_system,
)

__version__ = "0.1.0"
