"""Information diffusion measurement over code review reference networks.

Reviews become nodes, human cross-references become directed edges, and
three per-edge similarity functions (participants, touched components,
owning teams) quantify how much context travels along a reference. The
component dimension compares directory trees with an exact graph edit
distance when small and a greedy upper bound otherwise.
"""

from .catalog import (
    ComponentSnapshot,
    SnapshotArchive,
    component_graph_of,
    load_snapshot,
    map_files_to_components,
)
from .errors import (
    ConfigurationError,
    CredentialError,
    EmptyDistributionError,
    MissingSnapshotError,
    NothingToPlotError,
    PartialCrawlError,
    RejectedEventError,
    ReviewDiffusionError,
    SnapshotConsistencyError,
    UndefinedRatioError,
)
from .metrics import (
    DIMENSIONS,
    DimensionSummary,
    Ecdf,
    LinkedRatio,
    SimilarityRecord,
    Summary,
    ecdf,
    edge_similarities,
    linked_counts,
    summarize,
)
from .model import (
    CodeReviewNetwork,
    ComponentGraph,
    EnhancementMaps,
    ReferenceEdge,
    ReviewId,
    build_network,
    linked_ratio,
)
from .similarity import (
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

__version__ = "0.1.0"

__all__ = [
    "CodeReviewNetwork",
    "ComponentGraph",
    "ComponentSnapshot",
    "ConfigurationError",
    "CostModel",
    "CredentialError",
    "DIMENSIONS",
    "DimensionSummary",
    "Ecdf",
    "EmptyDistributionError",
    "EnhancementMaps",
    "LinkedRatio",
    "MissingSnapshotError",
    "NothingToPlotError",
    "PartialCrawlError",
    "ReferenceEdge",
    "RejectedEventError",
    "ReviewDiffusionError",
    "ReviewId",
    "Similarity",
    "SimilarityRecord",
    "SnapshotArchive",
    "SnapshotConsistencyError",
    "Summary",
    "UNIT_COSTS",
    "UndefinedRatioError",
    "active_kernel_name",
    "available_kernels",
    "build_network",
    "component_graph_of",
    "ecdf",
    "edge_similarities",
    "ged",
    "ged_approx",
    "ged_exact",
    "ged_similarity",
    "jaccard",
    "linked_counts",
    "linked_ratio",
    "load_snapshot",
    "map_files_to_components",
    "summarize",
    "teardown_cost",
]
