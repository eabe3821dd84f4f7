from .measures import (
    DEFAULT_EXACT_MAX_NODES,
    GED_APPROX,
    GED_EXACT,
    JACCARD,
    PURE_ENV_VAR,
    CostModel,
    Similarity,
    UNIT_COSTS,
    active_kernel_name,
    available_kernels,
    ged,
    ged_approx,
    ged_exact,
    ged_similarity,
    jaccard,
    teardown_cost,
)

__all__ = [
    "DEFAULT_EXACT_MAX_NODES",
    "GED_APPROX",
    "GED_EXACT",
    "JACCARD",
    "PURE_ENV_VAR",
    "CostModel",
    "Similarity",
    "UNIT_COSTS",
    "active_kernel_name",
    "available_kernels",
    "ged",
    "ged_approx",
    "ged_exact",
    "ged_similarity",
    "jaccard",
    "teardown_cost",
]
