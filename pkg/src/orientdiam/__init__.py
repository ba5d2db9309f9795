"""Strong orientations with small diameter for 2-edge-connected graphs."""

from .core import (
    CheckResult,
    DominationReport,
    EdgeLevelPartition,
    core_diameter_bound,
    core_distance_bounds,
    domination_report,
    level_partition,
    oriented_core,
    verify_core_distances,
)
from .ears import (
    Ear,
    EarSystem,
    act_ears,
    check_act_conclusions,
    check_act_preconditions,
    ct_ears,
    ct_grow,
    ct_orient_from_center,
    orient_remaining,
    reverse,
)
from .errors import (
    BudgetExceeded,
    GraphError,
    NotConnectedError,
    NotTwoEdgeConnectedError,
    OrientationConflict,
    OrientDiamError,
    PreconditionError,
    VerificationError,
)
from .graph import (
    INF,
    PartialOrientation,
    QuotientMap,
    UndirectedGraph,
    bfs_distances,
    bridges,
    center,
    contract,
    diameter,
    directed_distance_matrix,
    directed_distances,
    directed_radius,
    domination_radius,
    eccentricity,
    eta,
    is_two_edge_connected,
    oriented_diameter_of,
    radius,
    shortest_cycle_through_edge,
)
from .oracle import OracleResult, exact_oriented_diameter, verify_orientation
from .pipelines import (
    BoundReport,
    H2Report,
    build_h2,
    compute_promised_bounds,
    greedy_short_cycle_orient,
    orient_diameter4,
    orient_general,
    quadratic_envelope,
)

__version__ = "0.1.0"
