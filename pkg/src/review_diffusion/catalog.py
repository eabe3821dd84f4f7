"""Dated component catalogs and the file-to-component mapping.

A snapshot lists component paths (slash-separated folder prefixes) with
their owning team, one snapshot per day. Changed files map to the
deepest component whose path prefixes them, mirroring the intersection
of the file tree with the component tree; the surviving components are
the leaves of that intersection.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from datetime import date
from functools import cached_property
from pathlib import Path

from .errors import MissingSnapshotError, SnapshotConsistencyError
from .model import ComponentGraph

UNOWNED_COMPONENT = "__unowned__"
NO_TEAM = "__no_team__"

SNAPSHOT_NAME_RE = re.compile(r"^snapshot-(\d{4})-(\d{2})-(\d{2})\.jsonl$")


class PathTrie:
    """Prefix tree over path segments, with component roots marked.

    Lookup walks a file path and remembers the deepest node flagged as a
    component, i.e. the leaf of the file/component-tree intersection for
    that file.
    """

    __slots__ = ("children", "component")

    def __init__(self):
        self.children: dict[str, PathTrie] = {}
        self.component: str | None = None

    def insert(self, component_path: str) -> None:
        node = self
        for segment in component_path.split("/"):
            node = node.children.setdefault(segment, PathTrie())
        node.component = component_path

    def deepest_component(self, file_path: str) -> str | None:
        node = self
        best = node.component
        for segment in file_path.split("/"):
            node = node.children.get(segment)
            if node is None:
                break
            if node.component is not None:
                best = node.component
        return best


@dataclass
class ComponentSnapshot:
    """The component hierarchy and ownership valid on one day."""

    date: date
    entries: tuple[tuple[str, str], ...]

    def __post_init__(self):
        owners: dict[str, str] = {}
        for path, owner in self.entries:
            if path in owners and owners[path] != owner:
                raise ValueError(f"component {path!r} listed with conflicting owners")
            owners[path] = owner
        self._owners = owners

    @cached_property
    def trie(self) -> PathTrie:
        trie = PathTrie()
        for path in self._owners:
            trie.insert(path)
        return trie

    @cached_property
    def component_parents(self) -> dict[str, str | None]:
        """Deepest proper-prefix component of each component, None at top level."""
        parents: dict[str, str | None] = {}
        for path in self._owners:
            head = path.rsplit("/", 1)[0] if "/" in path else ""
            parent = self.trie.deepest_component(head) if head else None
            parents[path] = parent
        return parents

    def owner_of(self, component_path: str) -> str:
        if component_path == UNOWNED_COMPONENT:
            return NO_TEAM
        try:
            return self._owners[component_path]
        except KeyError:
            raise SnapshotConsistencyError(
                f"component {component_path!r} not in snapshot {self.date}"
            ) from None

    def has_component(self, component_path: str) -> bool:
        return component_path in self._owners


def _snapshot_dates(snapshot_dir: Path) -> dict[date, Path]:
    dates: dict[date, Path] = {}
    for entry in snapshot_dir.iterdir():
        match = SNAPSHOT_NAME_RE.match(entry.name)
        if match:
            year, month, day = map(int, match.groups())
            dates[date(year, month, day)] = entry
    return dates


def load_snapshot(snapshot_dir: str | Path, day: date) -> ComponentSnapshot:
    """Load the snapshot for ``day``, falling back to the nearest earlier one.

    Daily archives have gaps; the component structure valid at reference
    time is the last known prior state.
    """
    snapshot_dir = Path(snapshot_dir)
    if not snapshot_dir.is_dir():
        raise MissingSnapshotError(f"snapshot directory {snapshot_dir} does not exist")
    available = _snapshot_dates(snapshot_dir)
    candidates = [d for d in available if d <= day]
    if not candidates:
        raise MissingSnapshotError(f"no snapshot on or before {day} in {snapshot_dir}")
    chosen = max(candidates)
    entries = []
    with available[chosen].open("r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            entries.append((obj["component"].strip("/"), obj["owner"]))
    return ComponentSnapshot(date=chosen, entries=tuple(entries))


def map_files_to_components(files: list[str], snapshot: ComponentSnapshot) -> set[str]:
    """Deepest-prefix component of each file; unmatched files map to the sentinel.

    Dropping unmatched files silently would bias similarity upward, so
    they surface as the ``__unowned__`` component instead.
    """
    components: set[str] = set()
    for file_path in files:
        component = snapshot.trie.deepest_component(file_path)
        components.add(component if component is not None else UNOWNED_COMPONENT)
    return components


def component_graph_of(components: set[str], snapshot: ComponentSnapshot) -> ComponentGraph:
    """Minimal subtree of the snapshot hierarchy spanning the given components.

    A nonempty result is rooted at a virtual node (empty label); ancestors
    of the given components are filled in so containment edges are real.
    Spanning no components at all yields the empty graph.
    """
    needed: set[str] = set()
    for component in components:
        if component == UNOWNED_COMPONENT:
            needed.add(UNOWNED_COMPONENT)
            continue
        if not snapshot.has_component(component):
            raise SnapshotConsistencyError(f"component {component!r} not in snapshot {snapshot.date}")
        node: str | None = component
        while node is not None:
            needed.add(node)
            node = snapshot.component_parents[node]
    if not needed:
        return ComponentGraph.empty()
    # parents have strictly fewer segments, so this order puts them first
    ordered = sorted(needed, key=lambda p: (p.count("/"), p))
    labels = ("",) + tuple(ordered)
    index = {label: i for i, label in enumerate(labels)}
    parents = [-1]
    for path in ordered:
        if path == UNOWNED_COMPONENT:
            parents.append(0)
            continue
        parent = snapshot.component_parents[path]
        parents.append(index[parent] if parent is not None else 0)
    return ComponentGraph(labels=labels, parents=tuple(parents))


def owners_of(components: set[str], snapshot: ComponentSnapshot) -> frozenset[str]:
    """Union of the owning teams of the given components."""
    return frozenset(snapshot.owner_of(c) for c in components)


@dataclass
class SnapshotArchive:
    """Directory of daily snapshots with per-date load caching."""

    directory: Path
    _cache: dict[date, ComponentSnapshot] = field(default_factory=dict, repr=False)

    def at(self, day: date) -> ComponentSnapshot:
        if day not in self._cache:
            self._cache[day] = load_snapshot(self.directory, day)
        return self._cache[day]
