"""Keyed pseudonymization of users, teams, components, and reviews.

Identities are replaced by kind-prefixed truncated HMAC-SHA256 digests.
The mapping is a deterministic bijection per salt, so set overlaps,
graph shapes, and therefore every similarity value survive unchanged,
while nothing of the original strings leaks into published artifacts.
"""

from __future__ import annotations

import hashlib
import hmac

from ..errors import ConfigurationError
from ..metrics import SimilarityRecord
from ..model import (
    CodeReviewNetwork,
    ComponentGraph,
    EnhancementMaps,
    ReferenceEdge,
    ReviewId,
    ReviewKey,
)

USER_PREFIX = "u_"
TEAM_PREFIX = "t_"
COMPONENT_PREFIX = "c_"
REVIEW_PREFIX = "r_"

DIGEST_HEX_CHARS = 12

# Structural markers, not identities; they stay readable in outputs.
_PASSTHROUGH = {"", "__unowned__", "__no_team__"}


class Pseudonymizer:
    """Deterministic keyed renaming for one salt."""

    def __init__(self, salt: str | bytes):
        if isinstance(salt, str):
            salt = salt.encode("utf-8")
        if not salt:
            raise ConfigurationError("anonymization salt must be nonempty")
        self._salt = salt

    def _digest(self, kind: str, identity: str) -> str:
        message = f"{kind}:{identity}".encode("utf-8")
        return hmac.new(self._salt, message, hashlib.sha256).hexdigest()[:DIGEST_HEX_CHARS]

    def user(self, login: str) -> str:
        return USER_PREFIX + self._digest("user", login)

    def team(self, name: str) -> str:
        if name in _PASSTHROUGH:
            return name
        return TEAM_PREFIX + self._digest("team", name)

    def component(self, path: str) -> str:
        if path in _PASSTHROUGH:
            return path
        return COMPONENT_PREFIX + self._digest("component", path)

    def review(self, review: ReviewKey) -> str:
        return REVIEW_PREFIX + self._digest("review", str(review))

    def fingerprint(self) -> str:
        """Salt identifier safe to publish (one-way, no salt bytes)."""
        return hashlib.sha256(self._salt).hexdigest()[:DIGEST_HEX_CHARS]

    def network(self, network: CodeReviewNetwork) -> CodeReviewNetwork:
        return CodeReviewNetwork(
            reviews=frozenset(self.review(r) for r in network.reviews),
            edges=tuple(
                ReferenceEdge(self.review(e.source), self.review(e.target), e.timestamp)
                for e in network.sorted_edges()
            ),
        )

    def component_graph(self, graph: ComponentGraph) -> ComponentGraph:
        return ComponentGraph(
            labels=tuple(self.component(label) for label in graph.labels),
            parents=graph.parents,
        )

    def maps(self, maps: EnhancementMaps) -> EnhancementMaps:
        return EnhancementMaps(
            participants={
                self.review(r): frozenset(self.user(login) for login in logins)
                for r, logins in maps.participants.items()
            },
            components={
                self.review(r): self.component_graph(graph)
                for r, graph in maps.components.items()
            },
            teams={
                self.review(r): frozenset(self.team(t) for t in teams)
                for r, teams in maps.teams.items()
            },
        )

    def record(self, record: SimilarityRecord) -> SimilarityRecord:
        return SimilarityRecord(
            source=self.review(record.source),
            target=self.review(record.target),
            participants_sim=record.participants_sim,
            components_sim=record.components_sim,
            teams_sim=record.teams_sim,
        )


def anonymize(obj, salt: str | bytes):
    """Rewrite all identities in ``obj`` with pseudonyms, keeping its shape.

    Supports networks, enhancement maps, similarity records and lists of
    them, and bare review ids. The same salt always produces the same
    pseudonyms, so objects anonymized separately stay mutually
    consistent.
    """
    codec = Pseudonymizer(salt)
    if isinstance(obj, CodeReviewNetwork):
        return codec.network(obj)
    if isinstance(obj, EnhancementMaps):
        return codec.maps(obj)
    if isinstance(obj, SimilarityRecord):
        return codec.record(obj)
    if isinstance(obj, list):
        return [anonymize(item, salt) for item in obj]
    if isinstance(obj, (ReviewId, str)):
        return codec.review(obj)
    raise TypeError(f"cannot anonymize {type(obj).__name__}")
