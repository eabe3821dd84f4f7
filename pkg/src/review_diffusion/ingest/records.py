"""Raw review and event records as extracted from the platform."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date, datetime, timezone

from ..model import ReviewId

EVENT_KINDS = ("created", "commented", "reviewed", "referenced", "other")

BOT_LOGIN_SUFFIX = "[bot]"


def parse_utc(value: str) -> datetime:
    """Parse an ISO-8601 instant; 'Z' suffix and naive values mean UTC."""
    raw = value.strip()
    if raw.endswith(("Z", "z")):
        raw = raw[:-1] + "+00:00"
    parsed = datetime.fromisoformat(raw)
    if parsed.tzinfo is None:
        return parsed.replace(tzinfo=timezone.utc)
    return parsed.astimezone(timezone.utc)


def format_utc(value: datetime) -> str:
    return value.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def is_bot_login(login: str, account_type: str | None = None) -> bool:
    """Platform-flagged bot accounts or convention-named ``*[bot]`` logins."""
    return account_type == "Bot" or login.endswith(BOT_LOGIN_SUFFIX)


@dataclass(frozen=True)
class Actor:
    login: str
    is_bot: bool = False

    def __post_init__(self):
        if not self.login:
            raise ValueError("actor login must be nonempty")


@dataclass(frozen=True)
class ReviewEvent:
    """One timeline occurrence on a review.

    ``source_review`` is present exactly for references: the review in
    which the reference was written. ``review`` is the review the event
    belongs to (for a reference, the review being pointed at).
    """

    event_id: str
    kind: str
    review: ReviewId
    actor: Actor
    timestamp: datetime
    source_review: ReviewId | None = None

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise ValueError(f"unknown event kind {self.kind!r}")
        if self.kind == "referenced" and self.source_review is None:
            raise ValueError(f"event {self.event_id!r}: reference events need a source review")
        if self.kind != "referenced" and self.source_review is not None:
            raise ValueError(f"event {self.event_id!r}: only reference events carry a source review")
        if self.timestamp.tzinfo is None:
            raise ValueError(f"event {self.event_id!r}: timestamp must be timezone-aware")


def normalize_path(path: str) -> str:
    """Validate and normalize a repository-relative file path."""
    cleaned = path.replace("\\", "/").strip("/")
    if not cleaned:
        raise ValueError("empty file path")
    segments = cleaned.split("/")
    if any(seg in ("", ".", "..") for seg in segments):
        raise ValueError(f"path {path!r} contains empty or relative segments")
    return cleaned


@dataclass(frozen=True)
class PullRecord:
    """A pull request with its author, creation instant, and changed files."""

    review: ReviewId
    author: Actor
    created_at: datetime
    files: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "files", tuple(normalize_path(f) for f in self.files))


@dataclass
class EventStore:
    """Everything one crawl produced: pulls plus their timeline events."""

    pulls: list[PullRecord] = field(default_factory=list)
    events: list[ReviewEvent] = field(default_factory=list)

    def __post_init__(self):
        ids = [e.event_id for e in self.events]
        if len(ids) != len(set(ids)):
            raise ValueError("event ids must be unique")

    def pull_index(self) -> dict[ReviewId, PullRecord]:
        return {p.review: p for p in self.pulls}

    def known_reviews(self) -> set[ReviewId]:
        return {p.review for p in self.pulls}

    def external_reviews(self) -> set[ReviewId]:
        """Reviews referenced by events but absent from the crawled pulls."""
        known = self.known_reviews()
        external: set[ReviewId] = set()
        for event in self.events:
            if event.review not in known:
                external.add(event.review)
            if event.source_review is not None and event.source_review not in known:
                external.add(event.source_review)
        return external


def event_date(event: ReviewEvent) -> date:
    return event.timestamp.astimezone(timezone.utc).date()
