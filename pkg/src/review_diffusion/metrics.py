"""Per-edge similarity records and their distribution summaries.

For every reference edge, three similarities are measured between the
linked reviews: participant overlap, component-tree similarity, and team
overlap. Records keep a per-dimension defined flag instead of imputing
values when enhancement data is missing, so summaries can report data
loss transparently.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import EmptyDistributionError, UndefinedRatioError
from .model import CodeReviewNetwork, EnhancementMaps, ReviewKey
from .similarity import (
    DEFAULT_EXACT_MAX_NODES,
    JACCARD,
    CostModel,
    Similarity,
    UNIT_COSTS,
    ged_similarity,
    jaccard,
)

PARTICIPANTS = "participants"
COMPONENTS = "components"
TEAMS = "teams"
DIMENSIONS = (PARTICIPANTS, COMPONENTS, TEAMS)


@dataclass(frozen=True)
class SimilarityRecord:
    """The three measured similarities across one reference edge."""

    source: ReviewKey
    target: ReviewKey
    participants_sim: Similarity
    components_sim: Similarity
    teams_sim: Similarity

    @property
    def edge(self) -> tuple[ReviewKey, ReviewKey]:
        return (self.source, self.target)

    def get(self, dimension: str) -> Similarity:
        if dimension == PARTICIPANTS:
            return self.participants_sim
        if dimension == COMPONENTS:
            return self.components_sim
        if dimension == TEAMS:
            return self.teams_sim
        raise KeyError(dimension)


def edge_similarities(
    network: CodeReviewNetwork,
    maps: EnhancementMaps,
    costs: CostModel = UNIT_COSTS,
    exact_max_nodes: int = DEFAULT_EXACT_MAX_NODES,
    parallelism: int = 1,
) -> list[SimilarityRecord]:
    """One record per edge, in canonical (source, target) order.

    A dimension is undefined for an edge when either endpoint is missing
    from the corresponding map; the value is skipped, not imputed.
    """
    maps.check_domains(network)

    def measure(edge) -> SimilarityRecord:
        s, t = edge.source, edge.target
        if s in maps.participants and t in maps.participants:
            participants = jaccard(maps.participants[s], maps.participants[t])
        else:
            participants = Similarity.undefined(JACCARD)
        if s in maps.components and t in maps.components:
            components = ged_similarity(maps.components[s], maps.components[t],
                                        costs, exact_max_nodes)
        else:
            components = Similarity.undefined("")
        if s in maps.teams and t in maps.teams:
            teams = jaccard(maps.teams[s], maps.teams[t])
        else:
            teams = Similarity.undefined(JACCARD)
        return SimilarityRecord(s, t, participants, components, teams)

    edges = network.sorted_edges()
    if parallelism > 1 and len(edges) > 1:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            return list(pool.map(measure, edges))
    return [measure(edge) for edge in edges]


@dataclass(frozen=True)
class Ecdf:
    """Right-continuous empirical CDF over distinct sorted values."""

    points: tuple[tuple[float, float], ...]

    def __post_init__(self):
        last_value = None
        last_prob = 0.0
        for value, prob in self.points:
            if last_value is not None and value <= last_value:
                raise ValueError("ECDF values must be strictly increasing")
            if prob < last_prob:
                raise ValueError("ECDF probabilities must be nondecreasing")
            last_value, last_prob = value, prob
        if self.points and self.points[-1][1] != 1.0:
            raise ValueError("ECDF must end at probability 1")


def ecdf(values) -> Ecdf:
    """ECDF of the given values; ties collapse into one point."""
    vals = sorted(float(v) for v in values)
    if not vals:
        raise EmptyDistributionError("cannot build an ECDF from no values")
    for v in vals:
        if not math.isfinite(v) or not 0.0 <= v <= 1.0:
            raise ValueError(f"ECDF input {v} outside [0, 1]")
    n = len(vals)
    points = []
    for i, v in enumerate(vals):
        if i + 1 == n or vals[i + 1] != v:
            points.append((v, (i + 1) / n))
    return Ecdf(points=tuple(points))


@dataclass(frozen=True)
class LinkedRatio:
    """How many reviews of the population have at least one incident edge."""

    reviews: int
    linked: int

    def __post_init__(self):
        if self.reviews < 1:
            raise ValueError("population must be nonempty")
        if not 0 <= self.linked <= self.reviews:
            raise ValueError("linked count outside population")

    @property
    def ratio(self) -> float:
        return self.linked / self.reviews


def linked_counts(network: CodeReviewNetwork, all_reviews: set[ReviewKey]) -> LinkedRatio:
    """Linked-review counts over a population; empty populations are an error."""
    if not all_reviews:
        raise UndefinedRatioError("linked ratio is undefined for an empty review population")
    if not network.reviews <= frozenset(all_reviews):
        raise ValueError("network contains reviews outside the population")
    incident = network.incident_reviews()
    return LinkedRatio(reviews=len(all_reviews), linked=len(incident & set(all_reviews)))


@dataclass(frozen=True)
class DimensionSummary:
    """Distribution statistics of one dimension's defined similarities.

    All statistics are None when no record had the dimension defined;
    the row is still emitted so the data loss is visible.
    """

    dimension: str
    count: int
    defined: int
    minimum: float | None
    p25: float | None
    median: float | None
    p75: float | None
    maximum: float | None
    mean: float | None


@dataclass(frozen=True)
class Summary:
    dimensions: tuple[DimensionSummary, ...]
    linked: LinkedRatio | None = None

    def dimension(self, name: str) -> DimensionSummary:
        for dim in self.dimensions:
            if dim.dimension == name:
                return dim
        raise KeyError(name)


def nearest_rank(sorted_values: list[float], p: float) -> float:
    """Nearest-rank quantile: the ceil(p*n)-th smallest value, p in (0, 1]."""
    if not sorted_values:
        raise ValueError("quantile of no values")
    if not 0.0 < p <= 1.0:
        raise ValueError("quantile level must be in (0, 1]")
    rank = math.ceil(p * len(sorted_values))
    return sorted_values[rank - 1]


def summarize(records: list[SimilarityRecord], linked: LinkedRatio | None = None) -> Summary:
    """Quantile summary per dimension over defined similarities."""
    dims = []
    for name in DIMENSIONS:
        sims = [record.get(name) for record in records]
        values = sorted(s.value for s in sims if s.defined)
        if values:
            dims.append(DimensionSummary(
                dimension=name,
                count=len(sims),
                defined=len(values),
                minimum=values[0],
                p25=nearest_rank(values, 0.25),
                median=nearest_rank(values, 0.50),
                p75=nearest_rank(values, 0.75),
                maximum=values[-1],
                mean=sum(values) / len(values),
            ))
        else:
            dims.append(DimensionSummary(
                dimension=name, count=len(sims), defined=0,
                minimum=None, p25=None, median=None, p75=None,
                maximum=None, mean=None,
            ))
    return Summary(dimensions=tuple(dims), linked=linked)
