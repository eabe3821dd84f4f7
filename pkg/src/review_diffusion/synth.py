"""Seeded synthetic organizations for pipeline tests and demos.

Generates teams owning component subtrees, reviews touching files inside
their team's components, and reference events between reviews. The
cross_team_bias knob steers references toward same-team partners (near
0) or other-team partners (near 1), which is what separates the two
ends of the teams-similarity spectrum. Output uses the exact dump and
snapshot formats the real crawler and catalog produce, so everything
downstream runs on one ingestion path.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from pathlib import Path

from .ingest.dumps import write_store
from .ingest.records import Actor, EventStore, PullRecord, ReviewEvent
from .model import ReviewId

BASE_TIME = datetime(2019, 1, 2, 9, 0, 0, tzinfo=timezone.utc)
SNAPSHOT_DAY = "2019-01-01"
DEVS_PER_TEAM = 5


@dataclass(frozen=True)
class SynthParams:
    teams: int = 4
    components_per_team: int = 3
    reviews: int = 100
    reference_prob: float = 0.4
    cross_team_bias: float = 0.2
    bot_fraction: float = 0.0
    seed: int = 0

    def __post_init__(self):
        for name in ("teams", "components_per_team", "reviews"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")
        for name in ("reference_prob", "cross_team_bias", "bot_fraction"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")


@dataclass(frozen=True)
class GeneratedData:
    store: EventStore
    pulls_file: Path
    events_file: Path
    snapshot_file: Path


def _team_name(t: int) -> str:
    return f"team-{t:02d}"


def _component_root(t: int) -> str:
    return f"svc{t:02d}"


def _component_path(t: int, k: int) -> str:
    return f"{_component_root(t)}/mod{k:02d}"


def _repo_name(t: int) -> str:
    return f"synthorg/repo{t:02d}"


def generate(params: SynthParams, dump_dir: str | Path, snapshot_dir: str | Path) -> GeneratedData:
    """Write dump and snapshot files for one synthetic organization.

    Deterministic given params.seed: the generator draws from a single
    seeded stream in a fixed order, so byte-identical files come out of
    repeated runs.
    """
    rng = random.Random(params.seed)
    dump_dir = Path(dump_dir)
    snapshot_dir = Path(snapshot_dir)
    dump_dir.mkdir(parents=True, exist_ok=True)
    snapshot_dir.mkdir(parents=True, exist_ok=True)

    snapshot_file = snapshot_dir / f"snapshot-{SNAPSHOT_DAY}.jsonl"
    with snapshot_file.open("w", encoding="utf-8") as fh:
        for t in range(params.teams):
            fh.write(json.dumps({"component": _component_root(t), "owner": _team_name(t)}) + "\n")
            for k in range(params.components_per_team):
                fh.write(json.dumps({"component": _component_path(t, k),
                                     "owner": _team_name(t)}) + "\n")

    def actor(team: int) -> Actor:
        if rng.random() < params.bot_fraction:
            return Actor(login=f"auto-merge-{team:02d}[bot]", is_bot=True)
        return Actor(login=f"dev-{team:02d}-{rng.randrange(DEVS_PER_TEAM)}", is_bot=False)

    home_team = [i % params.teams for i in range(params.reviews)]
    pulls: list[PullRecord] = []
    for i in range(params.reviews):
        t = home_team[i]
        review = ReviewId(repo=_repo_name(t), number=i + 1)
        file_count = rng.randint(1, 3)
        files = []
        for _ in range(file_count):
            k = rng.randrange(params.components_per_team)
            files.append(f"{_component_path(t, k)}/file{rng.randrange(40):02d}.py")
        pulls.append(PullRecord(
            review=review,
            author=actor(t),
            created_at=BASE_TIME + timedelta(hours=i),
            files=sorted(set(files)),
        ))

    events: list[ReviewEvent] = []
    serial = {i: 0 for i in range(params.reviews)}

    def next_event_id(i: int) -> str:
        serial[i] += 1
        return f"{pulls[i].review.repo}#{pulls[i].review.number}/{serial[i]}"

    for i in range(params.reviews):
        t = home_team[i]
        for _ in range(rng.randint(0, 2)):
            events.append(ReviewEvent(
                event_id=next_event_id(i),
                kind="commented",
                review=pulls[i].review,
                actor=actor(t),
                timestamp=pulls[i].created_at + timedelta(minutes=rng.randint(5, 600)),
                source_review=None,
            ))
        if i == 0 or rng.random() >= params.reference_prob:
            continue
        cross = rng.random() < params.cross_team_bias
        candidates = [j for j in range(i)
                      if (home_team[j] != t) == cross]
        if not candidates:
            continue
        target = rng.choice(candidates)
        events.append(ReviewEvent(
            event_id=next_event_id(i),
            kind="referenced",
            review=pulls[target].review,
            actor=actor(t),
            timestamp=pulls[i].created_at + timedelta(minutes=rng.randint(30, 900)),
            source_review=pulls[i].review,
        ))

    store = EventStore(pulls=pulls, events=events)
    pulls_file, events_file = write_store(store, dump_dir)
    return GeneratedData(store=store, pulls_file=pulls_file,
                         events_file=events_file, snapshot_file=snapshot_file)
