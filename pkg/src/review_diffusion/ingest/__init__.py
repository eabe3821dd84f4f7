"""Data acquisition: crawling, offline dumps, and event-stream filtering."""

from .dumps import read_store, write_store
from .github import ApiConfig, crawl
from .pipeline import (
    ReferenceExtraction,
    active_reviews,
    extract_references,
    filter_events,
    group_participants,
    merged_events,
    synthesize_creation_events,
)
from .records import Actor, EventStore, PullRecord, ReviewEvent, is_bot_login, parse_utc

__all__ = [
    "ApiConfig",
    "Actor",
    "EventStore",
    "PullRecord",
    "ReferenceExtraction",
    "ReviewEvent",
    "active_reviews",
    "crawl",
    "extract_references",
    "filter_events",
    "group_participants",
    "is_bot_login",
    "merged_events",
    "parse_utc",
    "read_store",
    "synthesize_creation_events",
    "write_store",
]
