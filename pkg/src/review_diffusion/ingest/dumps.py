"""Line-delimited JSON dumps: the offline input path and the crawl output.

pulls.jsonl, one object per line:
    {"repo": "owner/name", "number": 17, "author": {"login": "x", "is_bot": false},
     "created_at": "2019-03-01T12:00:00Z", "files": ["a/b.py"]}
events.jsonl, one object per line:
    {"event_id": "...", "kind": "commented", "review": {"repo": "...", "number": 17},
     "actor": {"login": "x", "is_bot": false}, "timestamp": "...Z",
     "source_review": {"repo": "...", "number": 4} | null}
"""

from __future__ import annotations

import json
from pathlib import Path

from ..model import ReviewId
from .records import Actor, EventStore, PullRecord, ReviewEvent, format_utc, parse_utc

PULLS_FILENAME = "pulls.jsonl"
EVENTS_FILENAME = "events.jsonl"


def _review_to_json(review: ReviewId) -> dict:
    return {"repo": review.repo, "number": review.number}


def _review_from_json(obj: dict) -> ReviewId:
    return ReviewId(repo=obj["repo"], number=int(obj["number"]))


def _actor_to_json(actor: Actor) -> dict:
    return {"login": actor.login, "is_bot": actor.is_bot}


def _actor_from_json(obj: dict) -> Actor:
    return Actor(login=obj["login"], is_bot=bool(obj.get("is_bot", False)))


def pull_to_json(pull: PullRecord) -> dict:
    return {
        "repo": pull.review.repo,
        "number": pull.review.number,
        "author": _actor_to_json(pull.author),
        "created_at": format_utc(pull.created_at),
        "files": list(pull.files),
    }


def pull_from_json(obj: dict) -> PullRecord:
    return PullRecord(
        review=ReviewId(repo=obj["repo"], number=int(obj["number"])),
        author=_actor_from_json(obj["author"]),
        created_at=parse_utc(obj["created_at"]),
        files=tuple(obj.get("files", ())),
    )


def event_to_json(event: ReviewEvent) -> dict:
    return {
        "event_id": event.event_id,
        "kind": event.kind,
        "review": _review_to_json(event.review),
        "actor": _actor_to_json(event.actor),
        "timestamp": format_utc(event.timestamp),
        "source_review": _review_to_json(event.source_review) if event.source_review else None,
    }


def event_from_json(obj: dict) -> ReviewEvent:
    source = obj.get("source_review")
    return ReviewEvent(
        event_id=obj["event_id"],
        kind=obj["kind"],
        review=_review_from_json(obj["review"]),
        actor=_actor_from_json(obj["actor"]),
        timestamp=parse_utc(obj["timestamp"]),
        source_review=_review_from_json(source) if source else None,
    )


def _write_jsonl(path: Path, objects) -> None:
    with path.open("w", encoding="utf-8") as fh:
        for obj in objects:
            fh.write(json.dumps(obj, ensure_ascii=False))
            fh.write("\n")


def _read_jsonl(path: Path):
    with path.open("r", encoding="utf-8") as fh:
        for line_number, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                yield json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{line_number}: invalid JSON: {exc}") from exc


def write_store(store: EventStore, dump_dir: str | Path) -> tuple[Path, Path]:
    """Write pulls.jsonl and events.jsonl into ``dump_dir``."""
    dump_dir = Path(dump_dir)
    dump_dir.mkdir(parents=True, exist_ok=True)
    pulls_path = dump_dir / PULLS_FILENAME
    events_path = dump_dir / EVENTS_FILENAME
    _write_jsonl(pulls_path, (pull_to_json(p) for p in store.pulls))
    _write_jsonl(events_path, (event_to_json(e) for e in store.events))
    return pulls_path, events_path


def read_store(dump_dir: str | Path) -> EventStore:
    """Load an EventStore from a dump directory."""
    dump_dir = Path(dump_dir)
    pulls_path = dump_dir / PULLS_FILENAME
    events_path = dump_dir / EVENTS_FILENAME
    if not pulls_path.exists():
        raise FileNotFoundError(f"missing {pulls_path}")
    if not events_path.exists():
        raise FileNotFoundError(f"missing {events_path}")
    pulls = [pull_from_json(obj) for obj in _read_jsonl(pulls_path)]
    events = [event_from_json(obj) for obj in _read_jsonl(events_path)]
    return EventStore(pulls=pulls, events=events)
