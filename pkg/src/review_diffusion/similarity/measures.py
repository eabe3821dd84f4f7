"""Similarity measures between linked reviews.

Two families: Jaccard overlap for sets (participants, teams) and a
normalized graph edit distance for component trees. Edit distance is
exact on small instances (best-first search) and falls back to a greedy
label-matching upper bound above a size cutoff; the method is always
reported, never silently swapped.
"""

from __future__ import annotations

import os
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from ..model import ComponentGraph
from . import _astar_py

try:
    from . import _astar as _astar_ext
except ImportError:
    _astar_ext = None

JACCARD = "jaccard"
GED_EXACT = "ged_exact"
GED_APPROX = "ged_approx"

DEFAULT_EXACT_MAX_NODES = 8

# Force the pure kernel even when the compiled one is importable.
PURE_ENV_VAR = "REVIEW_DIFFUSION_PURE"


def available_kernels() -> dict[str, Callable]:
    """Importable search kernels by name, for parity tests and benchmarks."""
    kernels: dict[str, Callable] = {"pure": _astar_py.ged_search}
    if _astar_ext is not None:
        kernels["compiled"] = _astar_ext.ged_search
    return kernels


def _select_kernel() -> tuple[Callable, str]:
    if _astar_ext is None or os.environ.get(PURE_ENV_VAR) == "1":
        return _astar_py.ged_search, "pure"
    return _astar_ext.ged_search, "compiled"


_KERNEL, _KERNEL_NAME = _select_kernel()


def active_kernel_name() -> str:
    """Which exact-search kernel was selected at import time."""
    return _KERNEL_NAME


@dataclass(frozen=True)
class CostModel:
    """Edit operation costs; substituting a node with the same label is free."""

    node_delete: float = 1.0
    node_insert: float = 1.0
    node_substitute: float = 1.0
    edge_delete: float = 1.0
    edge_insert: float = 1.0

    def __post_init__(self):
        for name in ("node_delete", "node_insert", "node_substitute",
                     "edge_delete", "edge_insert"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    def substitute(self, label1: str, label2: str) -> float:
        return 0.0 if label1 == label2 else self.node_substitute


UNIT_COSTS = CostModel()


@dataclass(frozen=True)
class Similarity:
    """A normalized similarity value with its computation method.

    ``defined`` is False when the dimension could not be measured for a
    pair (missing enhancement data); the value is then None.
    """

    value: float | None
    method: str
    defined: bool = True

    def __post_init__(self):
        if self.defined:
            if self.value is None:
                raise ValueError("defined similarity needs a value")
            if not 0.0 <= self.value <= 1.0:
                raise ValueError(f"similarity {self.value} outside [0, 1]")
        elif self.value is not None:
            raise ValueError("undefined similarity must not carry a value")

    @classmethod
    def undefined(cls, method: str) -> "Similarity":
        return cls(value=None, method=method, defined=False)


def jaccard(a: Iterable, b: Iterable) -> Similarity:
    """Jaccard index |A∩B| / |A∪B|; two empty sets count as identical."""
    sa, sb = frozenset(a), frozenset(b)
    if not sa and not sb:
        return Similarity(value=1.0, method=JACCARD)
    value = len(sa & sb) / len(sa | sb)
    return Similarity(value=value, method=JACCARD)


def _sub_matrix(g1: ComponentGraph, g2: ComponentGraph, costs: CostModel) -> np.ndarray:
    matrix = np.empty((g1.node_count, g2.node_count), dtype=np.float64)
    for i, l1 in enumerate(g1.labels):
        for j, l2 in enumerate(g2.labels):
            matrix[i, j] = costs.substitute(l1, l2)
    return matrix


def ged_exact(g1: ComponentGraph, g2: ComponentGraph, costs: CostModel = UNIT_COSTS) -> float:
    """Exact minimum edit cost between two component trees."""
    kernel = _KERNEL
    if _astar_ext is not None and g2.node_count > _astar_ext.MAX_TARGETS:
        kernel = _astar_py.ged_search
    p1 = np.asarray(g1.parents, dtype=np.intc)
    p2 = np.asarray(g2.parents, dtype=np.intc)
    return float(kernel(p1, p2, _sub_matrix(g1, g2, costs),
                        costs.node_delete, costs.node_insert,
                        costs.edge_delete, costs.edge_insert))


def ged_approx(g1: ComponentGraph, g2: ComponentGraph, costs: CostModel = UNIT_COSTS) -> float:
    """Upper bound on the edit cost from a greedy label-matching assignment.

    Nodes with equal labels are paired in index order; everything left
    over is deleted or inserted. The evaluated cost of that assignment
    is never below the exact optimum.
    """
    pool: dict[str, deque[int]] = defaultdict(deque)
    for j, label in enumerate(g2.labels):
        pool[label].append(j)
    mapping: dict[int, int] = {}
    for i, label in enumerate(g1.labels):
        queue = pool.get(label)
        if queue:
            mapping[i] = queue.popleft()
    cost = (g1.node_count - len(mapping)) * costs.node_delete
    cost += (g2.node_count - len(mapping)) * costs.node_insert
    preserved = 0
    for child, parent in enumerate(g1.parents):
        if parent == -1:
            continue
        if child in mapping and parent in mapping and g2.parents[mapping[child]] == mapping[parent]:
            preserved += 1
    cost += (g1.edge_count - preserved) * costs.edge_delete
    cost += (g2.edge_count - preserved) * costs.edge_insert
    return float(cost)


def ged(g1: ComponentGraph, g2: ComponentGraph, costs: CostModel = UNIT_COSTS,
        exact_max_nodes: int = DEFAULT_EXACT_MAX_NODES) -> tuple[float, str]:
    """Edit cost and the method that produced it.

    Exact search runs when the combined node count fits under
    ``exact_max_nodes``; larger pairs get the greedy upper bound,
    flagged as such.
    """
    if g1.node_count + g2.node_count <= exact_max_nodes:
        return ged_exact(g1, g2, costs), GED_EXACT
    return ged_approx(g1, g2, costs), GED_APPROX


def teardown_cost(g1: ComponentGraph, g2: ComponentGraph,
                  costs: CostModel = UNIT_COSTS) -> float:
    """Cost of deleting all of g1 and inserting all of g2.

    This edit path is always available, so it bounds the edit distance
    from above and normalizes it into [0, 1].
    """
    return (g1.node_count * costs.node_delete + g1.edge_count * costs.edge_delete
            + g2.node_count * costs.node_insert + g2.edge_count * costs.edge_insert)


def ged_similarity(g1: ComponentGraph, g2: ComponentGraph,
                   costs: CostModel = UNIT_COSTS,
                   exact_max_nodes: int = DEFAULT_EXACT_MAX_NODES) -> Similarity:
    """1 minus the normalized edit cost; two empty graphs are identical."""
    cost, method = ged(g1, g2, costs, exact_max_nodes)
    bound = teardown_cost(g1, g2, costs)
    if bound == 0.0:
        return Similarity(value=1.0, method=method)
    return Similarity(value=1.0 - cost / bound, method=method)
