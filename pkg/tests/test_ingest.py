"""Event records, dump round trips, and the stream transformations."""

from __future__ import annotations

from datetime import date, datetime, timezone

import pytest

from review_diffusion.ingest import (
    Actor,
    EventStore,
    PullRecord,
    ReviewEvent,
    active_reviews,
    extract_references,
    filter_events,
    group_participants,
    is_bot_login,
    merged_events,
    parse_utc,
    read_store,
    write_store,
)

from helpers import T0, reference, review


def test_parse_utc_accepts_z_suffix_and_offsets():
    assert parse_utc("2021-06-01T12:00:00Z") == T0
    assert parse_utc("2021-06-01T14:00:00+02:00") == T0
    assert parse_utc("2021-06-01T12:00:00") == T0


def test_bot_detection_by_suffix_and_account_type():
    assert is_bot_login("dependabot[bot]")
    assert is_bot_login("anything", account_type="Bot")
    assert not is_bot_login("alice")


def test_event_invariants():
    with pytest.raises(ValueError):
        ReviewEvent("e", "referenced", review(1), Actor("a"), T0)
    with pytest.raises(ValueError):
        ReviewEvent("e", "commented", review(1), Actor("a"), T0, source_review=review(2))
    with pytest.raises(ValueError):
        ReviewEvent("e", "commented", review(1), Actor("a"),
                    datetime(2021, 6, 1, 12, 0))


def test_store_round_trips_through_dump_files(tmp_path):
    pull = PullRecord(review(1), Actor("alice"), T0, files=("svc/a.py",))
    events = [
        ReviewEvent("c1", "commented", review(1), Actor("bob"), T0),
        reference(review(1), review(2), minute=3, login="carol"),
    ]
    store = EventStore(pulls=[pull], events=events)
    write_store(store, tmp_path)
    loaded = read_store(tmp_path)
    assert loaded.pulls == [pull]
    assert loaded.events == events


def test_read_store_requires_both_files(tmp_path):
    with pytest.raises(FileNotFoundError):
        read_store(tmp_path)


def test_merged_events_synthesize_creations_first():
    pull = PullRecord(review(1), Actor("alice"), T0)
    store = EventStore(pulls=[pull], events=[
        ReviewEvent("c1", "commented", review(1), Actor("bob"), T0),
    ])
    events = merged_events(store)
    assert events[0].kind == "created"
    assert events[0].actor.login == "alice"
    assert events[1].kind == "commented"


def test_filter_events_applies_frame_and_bot_policy():
    inside = ReviewEvent("a", "commented", review(1), Actor("alice"), T0)
    outside = ReviewEvent("b", "commented", review(1), Actor("alice"),
                          datetime(2020, 1, 1, tzinfo=timezone.utc))
    bot = ReviewEvent("c", "commented", review(1), Actor("cih[bot]", is_bot=True), T0)
    frame = (date(2021, 6, 1), date(2021, 6, 2))
    assert filter_events([inside, outside, bot], frame, exclude_bots=True) == [inside]
    assert filter_events([inside, outside, bot], frame, exclude_bots=False) == [inside, bot]
    with pytest.raises(ValueError):
        filter_events([inside], (date(2021, 6, 2), date(2021, 6, 1)))


def test_extract_references_counts_exclusions():
    known = {review(1), review(2)}
    good = reference(review(1), review(2))
    selfish = reference(review(1), review(1), minute=1)
    external = reference(review(9), review(1), minute=2)
    comment = ReviewEvent("c", "commented", review(1), Actor("a"), T0)
    result = extract_references([good, selfish, external, comment], known)
    assert result.references == [good]
    assert result.self_references == 1
    assert result.unresolved == 1


def test_group_participants_collects_distinct_logins():
    events = [
        ReviewEvent("a", "commented", review(1), Actor("alice"), T0),
        ReviewEvent("b", "reviewed", review(1), Actor("bob"), T0),
        ReviewEvent("c", "commented", review(1), Actor("alice"), T0),
        ReviewEvent("d", "commented", review(2), Actor("carol"), T0),
    ]
    groups = group_participants(events)
    assert groups[review(1)] == frozenset({"alice", "bob"})
    assert groups[review(2)] == frozenset({"carol"})


def test_active_reviews_include_reference_sources():
    events = [reference(review(5), review(1))]
    assert active_reviews(events) == {review(1), review(5)}
