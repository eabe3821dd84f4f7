"""Domain types for the code review network and its enhancements.

A code review network is a directed graph: nodes are code reviews
(pull requests), edges are the explicit, human-made references from one
review to another. Reviews are enhanced with three mappings used by the
similarity measurements: participants, affected component tree, and
owning teams.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime
from typing import TYPE_CHECKING, Iterable, Mapping, Union

from .errors import RejectedEventError, UndefinedRatioError

if TYPE_CHECKING:
    from .ingest.records import ReviewEvent


@dataclass(frozen=True, order=True)
class ReviewId:
    """Identifies one code review: repository full name plus pull number."""

    repo: str
    number: int

    def __post_init__(self):
        if not self.repo:
            raise ValueError("repo must be nonempty")
        if self.number < 1:
            raise ValueError(f"review number must be >= 1, got {self.number}")

    def __str__(self) -> str:
        return f"{self.repo}#{self.number}"


# Anonymized structures replace ReviewId with an opaque pseudonym string;
# both sort and hash, so network operations accept either.
ReviewKey = Union[ReviewId, str]


def review_sort_key(review: ReviewKey):
    if isinstance(review, ReviewId):
        return (review.repo, review.number)
    return (review, 0)


@dataclass(frozen=True)
class ReferenceEdge:
    """A directed reference: ``source`` mentions ``target``.

    The timestamp is the earliest instant a human made that reference.
    """

    source: ReviewKey
    target: ReviewKey
    timestamp: datetime

    def __post_init__(self):
        if self.source == self.target:
            raise ValueError(f"self-reference not allowed: {self.source}")


@dataclass(frozen=True)
class CodeReviewNetwork:
    """Immutable directed graph of reviews and reference edges."""

    reviews: frozenset[ReviewKey]
    edges: tuple[ReferenceEdge, ...]

    def __post_init__(self):
        seen: set[tuple[ReviewKey, ReviewKey]] = set()
        for edge in self.edges:
            if edge.source not in self.reviews or edge.target not in self.reviews:
                raise ValueError(f"edge endpoint outside node set: {edge}")
            pair = (edge.source, edge.target)
            if pair in seen:
                raise ValueError(f"duplicate edge {pair}")
            seen.add(pair)

    @property
    def node_count(self) -> int:
        return len(self.reviews)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def sorted_reviews(self) -> list[ReviewKey]:
        return sorted(self.reviews, key=review_sort_key)

    def sorted_edges(self) -> list[ReferenceEdge]:
        return sorted(self.edges, key=lambda e: (review_sort_key(e.source), review_sort_key(e.target)))

    def incident_reviews(self) -> set[ReviewKey]:
        """Reviews touched by at least one edge, in either direction."""
        linked: set[ReviewKey] = set()
        for edge in self.edges:
            linked.add(edge.source)
            linked.add(edge.target)
        return linked


@dataclass(frozen=True)
class ComponentGraph:
    """Rooted labeled tree of the components affected by a review.

    Node 0 (when present) is the virtual root, labeled with the empty
    string; every other node's label is its component path. ``parents[i]``
    is the index of node i's parent, -1 for the root. The graph may be
    entirely empty (zero nodes).
    """

    labels: tuple[str, ...] = ()
    parents: tuple[int, ...] = ()

    def __post_init__(self):
        n = len(self.labels)
        if len(self.parents) != n:
            raise ValueError("labels and parents must have equal length")
        if len(set(self.labels)) != n:
            raise ValueError("labels must be unique")
        roots = 0
        for i, p in enumerate(self.parents):
            if p == -1:
                roots += 1
            elif not 0 <= p < n:
                raise ValueError(f"parent index {p} out of range")
            elif p == i:
                raise ValueError("node cannot be its own parent")
        if n and roots != 1:
            raise ValueError(f"tree must have exactly one root, got {roots}")
        # reject cycles: walk to the root from every node
        for i in range(n):
            seen = 0
            j = i
            while j != -1:
                j = self.parents[j]
                seen += 1
                if seen > n:
                    raise ValueError("parent pointers contain a cycle")

    @property
    def node_count(self) -> int:
        return len(self.labels)

    @property
    def edge_count(self) -> int:
        return max(0, len(self.labels) - 1)

    @property
    def is_empty(self) -> bool:
        return not self.labels

    @classmethod
    def empty(cls) -> "ComponentGraph":
        return cls((), ())


@dataclass(frozen=True)
class EnhancementMaps:
    """Per-review enhancements feeding the three similarity dimensions."""

    participants: Mapping[ReviewKey, frozenset[str]] = field(default_factory=dict)
    components: Mapping[ReviewKey, ComponentGraph] = field(default_factory=dict)
    teams: Mapping[ReviewKey, frozenset[str]] = field(default_factory=dict)

    def check_domains(self, network: CodeReviewNetwork) -> None:
        """Raise if any map covers a review outside the network."""
        for name, mapping in (
            ("participants", self.participants),
            ("components", self.components),
            ("teams", self.teams),
        ):
            extra = set(mapping) - set(network.reviews)
            if extra:
                raise ValueError(f"{name} map covers reviews outside the network: {sorted(map(str, extra))[:3]}")


def build_network(
    reference_events: Iterable["ReviewEvent"],
    extra_reviews: Iterable[ReviewKey] = (),
) -> CodeReviewNetwork:
    """Construct the review network from reference events.

    Every event must be a reference carrying both the review it was
    written in (source) and the review it points at (target). Duplicate
    (source, target) pairs collapse to a single edge keeping the earliest
    timestamp; self-references are dropped. Nodes are all reviews that
    appear on either end of a reference, plus ``extra_reviews`` so
    reviews that never link anything can still be counted as isolated
    vertices.
    """
    earliest: dict[tuple[ReviewKey, ReviewKey], datetime] = {}
    nodes: set[ReviewKey] = set(extra_reviews)
    for event in reference_events:
        if event.kind != "referenced":
            raise RejectedEventError(event.event_id, f"kind {event.kind!r} is not a reference")
        if event.source_review is None:
            raise RejectedEventError(event.event_id, "reference without a source review")
        if event.review is None:
            raise RejectedEventError(event.event_id, "reference without a target review")
        source, target = event.source_review, event.review
        nodes.add(source)
        nodes.add(target)
        if source == target:
            continue
        pair = (source, target)
        if pair not in earliest or event.timestamp < earliest[pair]:
            earliest[pair] = event.timestamp
    edges = tuple(
        ReferenceEdge(source, target, ts)
        for (source, target), ts in sorted(earliest.items(), key=lambda kv: (review_sort_key(kv[0][0]), review_sort_key(kv[0][1])))
    )
    return CodeReviewNetwork(frozenset(nodes), edges)


def linked_ratio(network: CodeReviewNetwork, all_reviews: set[ReviewKey]) -> float:
    """Fraction of ``all_reviews`` with at least one incident reference edge.

    Incidence counts both directions. The network's reviews must be a
    subset of ``all_reviews``; an empty population is an error, not 0.
    """
    if not all_reviews:
        raise UndefinedRatioError("linked ratio is undefined for an empty review population")
    missing = set(network.reviews) - all_reviews
    if missing:
        raise ValueError(f"network contains reviews outside the population: {sorted(map(str, missing))[:3]}")
    linked = network.incident_reviews() & all_reviews
    return len(linked) / len(all_reviews)
