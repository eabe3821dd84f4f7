"""Pipeline orchestration: crawl, measure, report, and synth subcommands.

Each subcommand is a pure function of its declared inputs. A config file
(line-oriented key=value) can hold every setting; command-line flags
override it. Every measurement output directory carries a metadata file
with a hash of the measurement-relevant configuration, and the report
stage refuses to mix outputs produced under a different configuration.

Exit codes: 0 success, 1 usage/configuration/credentials, 2 partial
crawl, 3 empty analysis domain.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass
from datetime import date, datetime, timezone
from pathlib import Path

from .catalog import SnapshotArchive, component_graph_of, map_files_to_components
from .errors import (
    ConfigurationError,
    CredentialError,
    EmptyDistributionError,
    MissingSnapshotError,
    NothingToPlotError,
    PartialCrawlError,
    RejectedEventError,
    ReviewDiffusionError,
    SnapshotConsistencyError,
    UndefinedRatioError,
)
from .ingest import (
    ApiConfig,
    active_reviews,
    crawl,
    extract_references,
    filter_events,
    group_participants,
    merged_events,
    read_store,
    write_store,
)
from .metrics import (
    COMPONENTS,
    DIMENSIONS,
    PARTICIPANTS,
    TEAMS,
    ecdf,
    edge_similarities,
    linked_counts,
    summarize,
)
from .model import CodeReviewNetwork, ComponentGraph, EnhancementMaps, ReferenceEdge, build_network
from .report import (
    COMPONENTS_FILENAME,
    LINKED_RATIO_FILENAME,
    SIMILARITIES_FILENAME,
    SUMMARY_FILENAME,
    Pseudonymizer,
    read_components_csv,
    read_similarities_csv,
    render_cdf,
    render_circular,
    write_components_csv,
    write_linked_ratio_csv,
    write_similarities_csv,
    write_summary_csv,
)
from .similarity import DEFAULT_EXACT_MAX_NODES, UNIT_COSTS
from .synth import SynthParams, generate

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARTIAL = 2
EXIT_EMPTY = 3

METADATA_FILENAME = "metadata.json"
CDF_FILENAME = "cdf.svg"
CIRCULAR_FILENAME = "circular.svg"

COST_MODEL_ID = "unit"

# placeholder timestamp for edges rebuilt from anonymized tables
_EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)


@dataclass(frozen=True)
class RunConfig:
    """Resolved settings for one command invocation."""

    source: str = "dump"
    start: date | None = None
    end: date | None = None
    dump_dir: Path | None = None
    snapshot_dir: Path | None = None
    out_dir: Path | None = None
    salt: str | None = None
    exclude_bots: bool = False
    exact_max_nodes: int = DEFAULT_EXACT_MAX_NODES
    parallelism: int = 1
    max_chords: int | None = None
    seed: int | None = None
    org: str | None = None
    teams: tuple[str, ...] | None = None
    synth_teams: int = 4
    synth_components_per_team: int = 3
    synth_reviews: int = 100
    synth_reference_prob: float = 0.4
    synth_cross_team_bias: float = 0.2
    synth_bot_fraction: float = 0.0

    def __post_init__(self):
        if self.source not in ("api", "dump"):
            raise ConfigurationError(f"source must be api or dump, got {self.source!r}")
        if self.start is not None and self.end is not None and self.start > self.end:
            raise ConfigurationError("sampling frame start is after its end")
        if self.exact_max_nodes < 2:
            raise ConfigurationError("ged_exact_max_nodes must be at least 2")
        if self.parallelism < 1:
            raise ConfigurationError("parallelism must be at least 1")
        if self.max_chords is not None and self.max_chords < 0:
            raise ConfigurationError("max_chords must not be negative")


def _parse_date(text: str, label: str) -> date:
    try:
        return date.fromisoformat(text)
    except ValueError:
        raise ConfigurationError(f"{label} is not a YYYY-MM-DD date: {text!r}") from None


def _parse_bool(text: str, label: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "1", "yes"):
        return True
    if lowered in ("false", "0", "no"):
        return False
    raise ConfigurationError(f"{label} must be a boolean, got {text!r}")


def parse_config_file(path: str | Path) -> dict[str, str]:
    """Line-oriented key=value settings; # starts a comment line."""
    entries: dict[str, str] = {}
    path = Path(path)
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigurationError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        entries[key.strip()] = value.strip()
    return entries


def _resolve_salt(salt_env: str | None) -> str | None:
    if salt_env is None:
        return None
    value = os.environ.get(salt_env)
    if not value:
        raise ConfigurationError(
            f"salt environment variable {salt_env} is unset or empty")
    return value


def build_config(args: argparse.Namespace) -> RunConfig:
    """Merge config-file entries with flag overrides (flags win)."""
    entries: dict[str, str] = {}
    if args.config is not None:
        entries = parse_config_file(args.config)

    def pick(flag_value, key: str, convert, default):
        if flag_value is not None:
            return convert(str(flag_value), key) if convert else flag_value
        if key in entries:
            return convert(entries[key], key) if convert else entries[key]
        return default

    as_int = lambda text, key: int(text)
    as_float = lambda text, key: float(text)
    as_path = lambda text, key: Path(text)

    salt_env = pick(getattr(args, "salt_env", None), "salt_env", None, None)
    teams_value = entries.get("teams")
    teams = tuple(t.strip() for t in teams_value.split(",") if t.strip()) if teams_value else None
    return RunConfig(
        source=pick(None, "source", None, "dump"),
        start=pick(getattr(args, "from_date", None), "from", _parse_date, None),
        end=pick(getattr(args, "to_date", None), "to", _parse_date, None),
        dump_dir=pick(getattr(args, "dump_dir", None), "dump_dir", as_path, None),
        snapshot_dir=pick(getattr(args, "snapshots", None), "snapshots", as_path, None),
        out_dir=pick(getattr(args, "out", None), "out", as_path, None),
        salt=_resolve_salt(salt_env),
        exclude_bots=pick(getattr(args, "exclude_bots", None), "exclude_bots", _parse_bool, False),
        exact_max_nodes=pick(getattr(args, "ged_exact_max_nodes", None),
                             "ged_exact_max_nodes", as_int, DEFAULT_EXACT_MAX_NODES),
        parallelism=pick(getattr(args, "parallelism", None), "parallelism", as_int, 1),
        max_chords=pick(getattr(args, "max_chords", None), "max_chords", as_int, None),
        seed=pick(getattr(args, "seed", None), "seed", as_int, None),
        org=entries.get("org"),
        teams=teams,
        synth_teams=pick(None, "synth_teams", as_int, 4),
        synth_components_per_team=pick(None, "synth_components_per_team", as_int, 3),
        synth_reviews=pick(None, "synth_reviews", as_int, 100),
        synth_reference_prob=pick(None, "synth_reference_prob", as_float, 0.4),
        synth_cross_team_bias=pick(None, "synth_cross_team_bias", as_float, 0.2),
        synth_bot_fraction=pick(None, "synth_bot_fraction", as_float, 0.0),
    )


def config_hash(config: RunConfig) -> str:
    """Hash of the measurement-relevant settings.

    Paths and parallelism are excluded: they change where data lives and
    how fast it is processed, never what is measured. The salt enters
    only as a one-way fingerprint.
    """
    fingerprint = Pseudonymizer(config.salt).fingerprint() if config.salt else ""
    canonical = json.dumps({
        "source": config.source,
        "from": config.start.isoformat() if config.start else None,
        "to": config.end.isoformat() if config.end else None,
        "exclude_bots": config.exclude_bots,
        "exact_max_nodes": config.exact_max_nodes,
        "cost_model": COST_MODEL_ID,
        "salt_fingerprint": fingerprint,
    }, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _require(config: RunConfig, **fields) -> None:
    for name, value in fields.items():
        if value is None:
            raise ConfigurationError(f"{name} is required (flag or config file)")


def cmd_crawl(config: RunConfig) -> int:
    if config.source != "api":
        raise ConfigurationError("crawl requires source=api in the configuration")
    _require(config, dump_dir=config.dump_dir, org=config.org)
    token = os.environ.get("GITHUB_TOKEN")
    if not token:
        raise CredentialError("GITHUB_TOKEN is not set")
    api = ApiConfig.from_env(org=config.org, teams=config.teams,
                             parallelism=config.parallelism)
    store = crawl(api)
    pulls_file, events_file = write_store(store, config.dump_dir)
    print(f"crawled {len(store.pulls)} pulls, {len(store.events)} events")
    print(f"wrote {pulls_file} and {events_file}")
    return EXIT_OK


def cmd_measure(config: RunConfig) -> int:
    _require(config, dump_dir=config.dump_dir, snapshot_dir=config.snapshot_dir,
             out_dir=config.out_dir, salt=config.salt)
    if config.start is None or config.end is None:
        raise ConfigurationError("measure needs a sampling frame (--from and --to)")

    store = read_store(config.dump_dir)
    events = merged_events(store)
    filtered = filter_events(events, (config.start, config.end), config.exclude_bots)
    extraction = extract_references(filtered, store.known_reviews())
    network = build_network(extraction.references)
    active = active_reviews(filtered)
    linked = linked_counts(network, active)

    all_participants = group_participants(filtered)
    participants = {r: s for r, s in all_participants.items() if r in network.reviews}

    incident_date: dict = {}
    for edge in network.sorted_edges():
        day = edge.timestamp.date()
        for review in (edge.source, edge.target):
            if review not in incident_date or day < incident_date[review]:
                incident_date[review] = day

    archive = SnapshotArchive(Path(config.snapshot_dir))
    pull_index = store.pull_index()
    components_map: dict = {}
    teams_map: dict = {}
    component_rows: set[tuple] = set()
    # date order makes a missing-snapshot failure name the earliest needed day
    for review in sorted(incident_date, key=lambda r: (incident_date[r], str(r))):
        pull = pull_index.get(review)
        if pull is None:
            continue
        snapshot = archive.at(incident_date[review])
        components = map_files_to_components(pull.files, snapshot)
        components_map[review] = component_graph_of(components, snapshot)
        teams_map[review] = frozenset(snapshot.owner_of(c) for c in components)
        for component in components:
            component_rows.add((review, component, snapshot.owner_of(component)))

    maps = EnhancementMaps(participants=participants, components=components_map,
                           teams=teams_map)
    records = edge_similarities(network, maps, UNIT_COSTS,
                                config.exact_max_nodes, config.parallelism)
    summary = summarize(records, linked)

    codec = Pseudonymizer(config.salt)
    anon_records = [codec.record(r) for r in records]
    anon_rows = [(codec.review(r), codec.component(c), codec.team(t))
                 for (r, c, t) in component_rows]

    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_similarities_csv(anon_records, out / SIMILARITIES_FILENAME)
    write_summary_csv(summary, out / SUMMARY_FILENAME)
    write_linked_ratio_csv(linked, out / LINKED_RATIO_FILENAME)
    write_components_csv(anon_rows, out / COMPONENTS_FILENAME)

    skipped = {dim: sum(1 for r in records if not r.get(dim).defined) for dim in DIMENSIONS}
    metadata = {
        "config_hash": config_hash(config),
        "config": {
            "source": config.source,
            "from": config.start.isoformat(),
            "to": config.end.isoformat(),
            "exclude_bots": config.exclude_bots,
            "exact_max_nodes": config.exact_max_nodes,
            "cost_model": COST_MODEL_ID,
            "salt_fingerprint": codec.fingerprint(),
        },
        "counts": {
            "pulls": len(store.pulls),
            "events": len(events),
            "events_in_frame": len(filtered),
            "active_reviews": linked.reviews,
            "linked_reviews": linked.linked,
            "network_reviews": network.node_count,
            "edges": network.edge_count,
            "unresolved_references": extraction.unresolved,
            "self_references": extraction.self_references,
            "skipped_by_dimension": skipped,
        },
        "decisions": {
            "linked_review": "at least one incident reference edge, either direction",
            "snapshot_fallback": "nearest earlier day",
            "component_snapshot_date": "earliest incident reference per review",
            "reference_scope": "pull-to-pull references only",
            "unmapped_files": "sentinel component __unowned__ owned by __no_team__",
        },
    }
    (out / METADATA_FILENAME).write_text(
        json.dumps(metadata, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"measured {network.edge_count} edges over {linked.reviews} reviews "
          f"(linked ratio {linked.ratio:.3f})")
    print(f"wrote outputs to {out}")
    return EXIT_OK


def _flat_component_graph(components: frozenset[str]) -> ComponentGraph:
    labels = ("",) + tuple(sorted(components))
    parents = (-1,) + (0,) * len(components)
    return ComponentGraph(labels=labels, parents=parents)


def cmd_report(config: RunConfig) -> int:
    _require(config, out_dir=config.out_dir, salt=config.salt)
    out = Path(config.out_dir)
    metadata_path = out / METADATA_FILENAME
    if not metadata_path.exists():
        raise FileNotFoundError(f"{metadata_path} not found; run measure first")
    metadata = json.loads(metadata_path.read_text(encoding="utf-8"))
    expected = config_hash(config)
    if metadata.get("config_hash") != expected:
        raise ConfigurationError(
            "output directory was produced under a different configuration "
            f"(metadata hash {metadata.get('config_hash')!r}, current {expected!r})")

    records = read_similarities_csv(out / SIMILARITIES_FILENAME)
    ecdfs = {}
    for dimension in DIMENSIONS:
        values = [r.get(dimension).value for r in records if r.get(dimension).defined]
        ecdfs[dimension] = ecdf(values) if values else None
    render_cdf(ecdfs, out / CDF_FILENAME)

    component_rows = read_components_csv(out / COMPONENTS_FILENAME)
    owners = {component: team for (_, component, team) in component_rows}
    review_components: dict = {}
    for review, component, _ in component_rows:
        review_components.setdefault(review, set()).add(component)

    reviews = set(review_components)
    edges = []
    seen_pairs = set()
    for record in records:
        reviews.add(record.source)
        reviews.add(record.target)
        pair = (record.source, record.target)
        if record.source != record.target and pair not in seen_pairs:
            seen_pairs.add(pair)
            edges.append(ReferenceEdge(record.source, record.target, _EPOCH))
    network = CodeReviewNetwork(reviews=frozenset(reviews), edges=tuple(edges))
    maps = EnhancementMaps(
        components={r: _flat_component_graph(frozenset(c)) for r, c in review_components.items()},
        teams={r: frozenset(owners[c] for c in comps)
               for r, comps in review_components.items()},
    )
    chord_rank = {(r.source, r.target): r.components_sim.value if r.components_sim.defined else None
                  for r in records}
    render_circular(network, maps, out / CIRCULAR_FILENAME, owners=owners,
                    max_chords=config.max_chords, chord_rank=chord_rank)
    print(f"wrote {out / CDF_FILENAME} and {out / CIRCULAR_FILENAME}")
    return EXIT_OK


def cmd_synth(config: RunConfig) -> int:
    _require(config, dump_dir=config.dump_dir, snapshot_dir=config.snapshot_dir)
    params = SynthParams(
        teams=config.synth_teams,
        components_per_team=config.synth_components_per_team,
        reviews=config.synth_reviews,
        reference_prob=config.synth_reference_prob,
        cross_team_bias=config.synth_cross_team_bias,
        bot_fraction=config.synth_bot_fraction,
        seed=config.seed if config.seed is not None else 0,
    )
    generated = generate(params, config.dump_dir, config.snapshot_dir)
    print(f"generated {len(generated.store.pulls)} pulls, "
          f"{len(generated.store.events)} events, snapshot {generated.snapshot_file.name}")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors belong to exit code 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, default=None,
                        help="key=value configuration file")
    parser.add_argument("--from", dest="from_date", default=None, metavar="DATE",
                        help="sampling frame start (YYYY-MM-DD)")
    parser.add_argument("--to", dest="to_date", default=None, metavar="DATE",
                        help="sampling frame end (YYYY-MM-DD)")
    parser.add_argument("--dump-dir", type=Path, default=None,
                        help="directory with pulls.jsonl and events.jsonl")
    parser.add_argument("--snapshots", type=Path, default=None,
                        help="directory with snapshot-YYYY-MM-DD.jsonl files")
    parser.add_argument("--out", type=Path, default=None,
                        help="output directory for measurement artifacts")
    parser.add_argument("--salt-env", default=None, metavar="VAR",
                        help="environment variable holding the anonymization salt")
    parser.add_argument("--exclude-bots", action="store_true", default=None,
                        help="drop bot-authored events before measuring")
    parser.add_argument("--ged-exact-max-nodes", type=int, default=None, metavar="N",
                        help="combined node budget for exact edit-distance search")
    parser.add_argument("--parallelism", type=int, default=None, metavar="N",
                        help="worker count for crawling and per-edge measurement")
    parser.add_argument("--max-chords", type=int, default=None, metavar="N",
                        help="cap on rendered chords, lowest similarity first")
    parser.add_argument("--seed", type=int, default=None, metavar="N",
                        help="seed for synthetic data generation")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="review-diffusion",
                     description="Measure information diffusion in code review networks.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("crawl", "fetch pulls and timeline events into dump files"),
        ("measure", "compute similarities, summaries, and the linked ratio"),
        ("report", "render the CDF chart and the circular component layout"),
        ("synth", "generate a seeded synthetic organization"),
    ):
        command = sub.add_parser(name, help=help_text, parents=[])
        _add_common(command)
    return parser


_COMMANDS = {
    "crawl": cmd_crawl,
    "measure": cmd_measure,
    "report": cmd_report,
    "synth": cmd_synth,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = build_config(args)
        return _COMMANDS[args.command](config)
    except PartialCrawlError as exc:
        completed = ", ".join(exc.completed_repos) or "none"
        print(f"error: partial crawl: {exc} (completed repos: {completed})", file=sys.stderr)
        return EXIT_PARTIAL
    except (UndefinedRatioError, EmptyDistributionError, NothingToPlotError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY
    except (ConfigurationError, CredentialError, MissingSnapshotError,
            SnapshotConsistencyError, RejectedEventError, FileNotFoundError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
