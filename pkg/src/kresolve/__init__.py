"""k-resolving sets of graphs and the 3DM -> 3DkM -> k-metric dimension reductions."""

from .graph import (
    DisconnectedGraphError,
    DistanceMatrix,
    Graph,
    GraphError,
    all_pairs_distances,
    build_graph,
    diameter,
    is_bipartite,
)
from .kmd_reduction import (
    ReductionGraph,
    WitnessRejected,
    build_kmd_instance,
    index_bits,
    verify_structure,
    witness_backward,
    witness_forward,
)
from .resolving import (
    KResolvingCertificate,
    ResolverTable,
    SolveResult,
    forced_vertices,
    greedy_k_resolving,
    is_k_resolving,
    k_metric_dimension_exact,
    max_k,
    resolver_table,
    table_for,
)
from .threedm import (
    Matching,
    Reduction,
    ScaleGuardExceeded,
    TripleSystem,
    build_R,
    build_T,
    build_T_pq,
    build_T_prime,
    find_k_matching,
    lift_matching,
    pad_to_multiple,
    project_matching,
    reduce_3dm_to_3dkm,
    verify_k_matching,
)

__version__ = "0.1.0"
