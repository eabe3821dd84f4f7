"""Pure event-stream transformations between crawl and measurement.

Creation events are synthesized from the pull records because the
timeline endpoint does not deliver them; events are then filtered by
sampling frame and bot status, references are extracted and resolved
against the known pulls, and participants are grouped per review.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date

from ..model import ReviewId
from .records import EventStore, PullRecord, ReviewEvent, event_date


def synthesize_creation_events(pulls: list[PullRecord]) -> list[ReviewEvent]:
    """One ``created`` event per pull, by its author at its creation time."""
    return [
        ReviewEvent(
            event_id=f"created:{pull.review}",
            kind="created",
            review=pull.review,
            actor=pull.author,
            timestamp=pull.created_at,
        )
        for pull in pulls
    ]


def filter_events(
    events: list[ReviewEvent],
    frame: tuple[date, date],
    exclude_bots: bool = True,
) -> list[ReviewEvent]:
    """Retain events whose date falls in the closed frame, dropping bots if asked.

    Input order is preserved.
    """
    start, end = frame
    if start > end:
        raise ValueError(f"inverted sampling frame: {start} > {end}")
    kept = []
    for event in events:
        if not start <= event_date(event) <= end:
            continue
        if exclude_bots and event.actor.is_bot:
            continue
        kept.append(event)
    return kept


@dataclass
class ReferenceExtraction:
    """References that survived resolution, plus what was excluded and why."""

    references: list[ReviewEvent] = field(default_factory=list)
    unresolved: int = 0
    self_references: int = 0


def extract_references(events: list[ReviewEvent], known_reviews: set[ReviewId]) -> ReferenceExtraction:
    """Keep reference events whose source and target both resolve to known pulls.

    Self-references and references touching reviews outside ``known_reviews``
    (external repositories, deleted pulls) are excluded but counted.
    """
    result = ReferenceExtraction()
    for event in events:
        if event.kind != "referenced":
            continue
        if event.source_review == event.review:
            result.self_references += 1
            continue
        if event.review not in known_reviews or event.source_review not in known_reviews:
            result.unresolved += 1
            continue
        result.references.append(event)
    return result


def group_participants(events: list[ReviewEvent]) -> dict[ReviewId, frozenset[str]]:
    """Distinct actor logins per review, over events of every kind.

    Reviews without any event are absent from the map; empty sets are
    never materialized.
    """
    logins: dict[ReviewId, set[str]] = {}
    for event in events:
        logins.setdefault(event.review, set()).add(event.actor.login)
    return {review: frozenset(people) for review, people in logins.items()}


def active_reviews(events: list[ReviewEvent]) -> set[ReviewId]:
    """Reviews with any event activity, including being the source of a reference."""
    active: set[ReviewId] = set()
    for event in events:
        active.add(event.review)
        if event.source_review is not None:
            active.add(event.source_review)
    return active


def merged_events(store: EventStore) -> list[ReviewEvent]:
    """Timeline events plus synthesized creation events, creations first."""
    return synthesize_creation_events(store.pulls) + list(store.events)
