"""Random walks on fibers of integer matrices with Markov bases."""

__version__ = "0.1.0"

from .adapted import (
    AdaptedBasis,
    BudgetExceededError,
    FiberAdaptation,
    adapt_to_fiber,
    lattice_superset,
    power_moves,
    sample_cross_polytope,
)
from .expansion import (
    boundary,
    boundary_slice_superset_size,
    edge_expansion_exact,
    expansion_upper_bound,
    slem_lower_bound_from_expansion,
)
from .fiber import (
    Fiber,
    enumerate_fiber,
    fiber_size_upper_bound,
    fit_growth_degree,
    ray_growth,
    slice_count,
)
from .graph import (
    DisconnectedGraphError,
    FiberGraph,
    TransitionMatrix,
    build_fiber_graph,
    diameter,
    hemmecke_hypercube_graph,
    is_connected,
    transition_matrix,
)
from .linalg import (
    IntegerMatrix,
    KernelMeetsOrthantError,
    certify_kernel_positivity,
    integer_rank,
    lattice_basis,
)
from .models import ModelInstance, build_hemmecke, build_independence, build_single_row
from .moves import MoveSet, complexity
from .spectral import loop_removed, slem
from .walks import WalkConfig, WalkTrace, exact_tv_curve, run_walk

__all__ = [
    "AdaptedBasis",
    "BudgetExceededError",
    "DisconnectedGraphError",
    "Fiber",
    "FiberAdaptation",
    "FiberGraph",
    "IntegerMatrix",
    "KernelMeetsOrthantError",
    "ModelInstance",
    "MoveSet",
    "TransitionMatrix",
    "WalkConfig",
    "WalkTrace",
    "adapt_to_fiber",
    "boundary",
    "boundary_slice_superset_size",
    "build_fiber_graph",
    "build_hemmecke",
    "build_independence",
    "build_single_row",
    "certify_kernel_positivity",
    "complexity",
    "diameter",
    "edge_expansion_exact",
    "enumerate_fiber",
    "exact_tv_curve",
    "expansion_upper_bound",
    "fiber_size_upper_bound",
    "fit_growth_degree",
    "hemmecke_hypercube_graph",
    "integer_rank",
    "is_connected",
    "lattice_basis",
    "lattice_superset",
    "loop_removed",
    "power_moves",
    "ray_growth",
    "run_walk",
    "sample_cross_polytope",
    "slem",
    "slem_lower_bound_from_expansion",
    "slice_count",
    "transition_matrix",
]
