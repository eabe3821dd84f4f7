"""Tiny builders shared across test modules."""

from __future__ import annotations

from datetime import datetime, timedelta, timezone

from review_diffusion.ingest import Actor, ReviewEvent
from review_diffusion.model import ReviewId

T0 = datetime(2021, 6, 1, 12, 0, tzinfo=timezone.utc)


def review(number: int, repo: str = "org/repo") -> ReviewId:
    return ReviewId(repo=repo, number=number)


def reference(source: ReviewId, target: ReviewId, minute: int = 0,
              login: str = "alice", bot: bool = False) -> ReviewEvent:
    """A reference event: written in ``source``, pointing at ``target``."""
    return ReviewEvent(
        event_id=f"ref:{source}->{target}@{minute}",
        kind="referenced",
        review=target,
        actor=Actor(login=login, is_bot=bot),
        timestamp=T0 + timedelta(minutes=minute),
        source_review=source,
    )
