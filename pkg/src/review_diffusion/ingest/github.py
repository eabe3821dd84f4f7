"""Crawler for a GitHub-compatible REST API.

Repository enumeration deliberately goes teams -> repos -> pulls; the
search API caps results and the global events feed only serves a short
window, so neither is used. Per-pull timelines are the only event
source. The crawl itself is lossless: bot events and out-of-frame
events are retained and filtered later.
"""

from __future__ import annotations

import logging
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import requests

from ..errors import CredentialError, PartialCrawlError
from ..model import ReviewId
from .records import Actor, EventStore, PullRecord, ReviewEvent, is_bot_login, normalize_path, parse_utc

logger = logging.getLogger(__name__)

DEFAULT_API_URL = "https://api.github.com"


@dataclass(frozen=True)
class ApiConfig:
    base_url: str
    token: str | None
    org: str
    teams: tuple[str, ...] | None = None
    per_page: int = 100
    max_retries: int = 3
    parallelism: int = 1
    backoff_base: float = 0.5
    max_rate_limit_waits: int = 10
    max_rate_limit_sleep: float = 120.0
    timeout: float = 30.0

    @classmethod
    def from_env(cls, org: str, teams: tuple[str, ...] | None = None, **overrides) -> "ApiConfig":
        """Read GITHUB_TOKEN and GITHUB_API_URL from the environment."""
        return cls(
            base_url=os.environ.get("GITHUB_API_URL", DEFAULT_API_URL).rstrip("/"),
            token=os.environ.get("GITHUB_TOKEN"),
            org=org,
            teams=teams,
            **overrides,
        )


class _RequestFailed(Exception):
    """A request kept failing after the bounded retries."""


class _Client:
    """Session-per-thread HTTP client with pagination and backoff."""

    def __init__(self, config: ApiConfig):
        self.config = config
        self._local = threading.local()

    def _session(self) -> requests.Session:
        session = getattr(self._local, "session", None)
        if session is None:
            session = requests.Session()
            session.headers["Accept"] = "application/vnd.github+json"
            if self.config.token:
                session.headers["Authorization"] = f"Bearer {self.config.token}"
            self._local.session = session
        return session

    def _rate_limit_wait(self, response: requests.Response) -> float | None:
        """Seconds to wait if the response signals rate limiting, else None."""
        if response.status_code == 429:
            return float(response.headers.get("Retry-After", 1.0))
        if response.status_code == 403:
            if "Retry-After" in response.headers:
                return float(response.headers["Retry-After"])
            if response.headers.get("X-RateLimit-Remaining") == "0":
                reset = float(response.headers.get("X-RateLimit-Reset", 0))
                return max(reset - time.time(), 1.0)
        return None

    def get(self, path: str, params: dict | None = None) -> requests.Response:
        url = path if path.startswith("http") else f"{self.config.base_url}{path}"
        rate_waits = 0
        attempt = 0
        while True:
            try:
                response = self._session().get(url, params=params, timeout=self.config.timeout)
            except requests.RequestException as exc:
                attempt += 1
                if attempt > self.config.max_retries:
                    raise _RequestFailed(f"GET {url}: {exc}") from exc
                time.sleep(self.config.backoff_base * 2 ** (attempt - 1))
                continue
            wait = self._rate_limit_wait(response)
            if wait is not None:
                rate_waits += 1
                if rate_waits > self.config.max_rate_limit_waits:
                    raise _RequestFailed(f"GET {url}: rate limited {rate_waits} times")
                logger.info("rate limited on %s, sleeping %.1fs", url, wait)
                time.sleep(min(wait, self.config.max_rate_limit_sleep))
                continue
            if response.status_code in (401, 403):
                raise CredentialError(f"GET {url}: HTTP {response.status_code}: check token and scopes")
            if response.status_code >= 500:
                attempt += 1
                if attempt > self.config.max_retries:
                    raise _RequestFailed(f"GET {url}: HTTP {response.status_code} after {attempt} attempts")
                time.sleep(self.config.backoff_base * 2 ** (attempt - 1))
                continue
            response.raise_for_status()
            return response

    def paged(self, path: str, params: dict | None = None) -> list[dict]:
        """Drain a paginated collection by following Link rel=next."""
        params = dict(params or {})
        params.setdefault("per_page", self.config.per_page)
        items: list[dict] = []
        response = self.get(path, params)
        while True:
            items.extend(response.json())
            next_url = response.links.get("next", {}).get("url")
            if not next_url:
                return items
            response = self.get(next_url)


def _actor_from(obj: dict | None) -> Actor:
    obj = obj or {}
    login = obj.get("login") or "ghost"
    return Actor(login=login, is_bot=is_bot_login(login, obj.get("type")))


def _source_review(obj: dict) -> ReviewId | None:
    issue = (obj.get("source") or {}).get("issue") or {}
    number = issue.get("number")
    full_name = (issue.get("repository") or {}).get("full_name")
    if number and full_name:
        return ReviewId(repo=full_name, number=int(number))
    return None


def _normalize_timeline_event(repo: str, number: int, index: int, obj: dict) -> ReviewEvent | None:
    """Map a raw timeline object onto our event vocabulary.

    References keep their payload source review; events without a usable
    timestamp are dropped because the sampling frame cannot place them.
    """
    raw_ts = obj.get("created_at") or obj.get("submitted_at")
    if not raw_ts:
        return None
    review = ReviewId(repo=repo, number=number)
    actor = _actor_from(obj.get("actor") or obj.get("user"))
    event_id = f"{repo}#{number}/{index}"
    name = obj.get("event")
    if name in ("cross-referenced", "referenced"):
        source = _source_review(obj)
        if source is not None:
            return ReviewEvent(event_id, "referenced", review, actor, parse_utc(raw_ts), source_review=source)
        return ReviewEvent(event_id, "other", review, actor, parse_utc(raw_ts))
    kind = name if name in ("commented", "reviewed") else "other"
    return ReviewEvent(event_id, kind, review, actor, parse_utc(raw_ts))


def _fetch_pull_details(client: _Client, repo: str, pull_obj: dict) -> tuple[PullRecord, list[ReviewEvent]]:
    number = int(pull_obj["number"])
    files: list[str] = []
    for file_obj in client.paged(f"/repos/{repo}/pulls/{number}/files"):
        name = file_obj.get("filename")
        if not name:
            continue
        try:
            files.append(normalize_path(name))
        except ValueError:
            logger.warning("skipping unusable file path %r in %s#%s", name, repo, number)
    pull = PullRecord(
        review=ReviewId(repo=repo, number=number),
        author=_actor_from(pull_obj.get("user")),
        created_at=parse_utc(pull_obj["created_at"]),
        files=tuple(files),
    )
    events = []
    for index, raw in enumerate(client.paged(f"/repos/{repo}/issues/{number}/timeline")):
        event = _normalize_timeline_event(repo, number, index, raw)
        if event is not None:
            events.append(event)
    return pull, events


def crawl(config: ApiConfig) -> EventStore:
    """Collect all pulls and timeline events of all configured teams' repos.

    Raises CredentialError on rejected auth, PartialCrawlError (listing
    the repositories already finished) when a repository keeps failing.
    """
    client = _Client(config)
    completed: list[str] = []
    try:
        if config.teams is not None:
            team_slugs = list(config.teams)
        else:
            team_slugs = [t["slug"] for t in client.paged(f"/orgs/{config.org}/teams")]
        repo_names: set[str] = set()
        for slug in team_slugs:
            for repo_obj in client.paged(f"/orgs/{config.org}/teams/{slug}/repos"):
                repo_names.add(repo_obj["full_name"])
    except _RequestFailed as exc:
        raise PartialCrawlError(f"crawl aborted during enumeration: {exc}", completed_repos=[]) from exc

    store = EventStore()
    for repo in sorted(repo_names):
        try:
            pull_objs = client.paged(f"/repos/{repo}/pulls", params={"state": "all"})
            if config.parallelism > 1:
                with ThreadPoolExecutor(max_workers=config.parallelism) as pool:
                    details = list(pool.map(lambda obj: _fetch_pull_details(client, repo, obj), pull_objs))
            else:
                details = [_fetch_pull_details(client, repo, obj) for obj in pull_objs]
        except _RequestFailed as exc:
            raise PartialCrawlError(
                f"crawl aborted in {repo}: {exc}", completed_repos=list(completed)
            ) from exc
        for pull, events in details:
            store.pulls.append(pull)
            store.events.extend(events)
        completed.append(repo)
        logger.info("crawled %s: %d pulls", repo, len(details))
    return EventStore(pulls=store.pulls, events=store.events)
