"""Independent reference implementations used to check the real code.

Everything here is deliberately naive: exhaustive enumeration instead
of search, linear scans instead of tries, counting loops instead of set
algebra. Slow and obviously correct beats fast and subtle when the job
is catching bugs in the fast path.
"""

from __future__ import annotations

import random
from itertools import product

from review_diffusion.model import ComponentGraph
from review_diffusion.similarity import CostModel


def jaccard_by_counting(a, b) -> float:
    """Jaccard index computed with membership loops, no set operators."""
    items_a = list(dict.fromkeys(a))
    items_b = list(dict.fromkeys(b))
    if not items_a and not items_b:
        return 1.0
    both = sum(1 for x in items_a if x in items_b)
    union = len(items_a) + sum(1 for x in items_b if x not in items_a)
    return both / union


def enumerate_ged(labels1, parents1, labels2, parents2, costs: CostModel) -> float:
    """Minimum edit cost by trying every partial injective node assignment.

    Each V1 node maps to a V2 node or None (deletion); unmapped V2 nodes
    are insertions. Edge costs follow from which parent relations the
    assignment preserves. Exponential, fine below ~5 nodes per side.
    """
    n1, n2 = len(labels1), len(labels2)
    e1 = sum(1 for p in parents1 if p != -1)
    e2 = sum(1 for p in parents2 if p != -1)
    best = float("inf")
    choices = [list(range(n2)) + [None]] * n1
    for assign in product(*choices) if n1 else [()]:
        mapped = [v for v in assign if v is not None]
        if len(set(mapped)) != len(mapped):
            continue
        cost = sum(
            costs.node_delete if v is None else costs.substitute(labels1[i], labels2[v])
            for i, v in enumerate(assign)
        )
        cost += (n2 - len(mapped)) * costs.node_insert
        preserved = 0
        for child, parent in enumerate(parents1):
            if parent == -1 or assign[child] is None or assign[parent] is None:
                continue
            if parents2[assign[child]] == assign[parent]:
                preserved += 1
        cost += (e1 - preserved) * costs.edge_delete
        cost += (e2 - preserved) * costs.edge_insert
        best = min(best, cost)
    return best


def enumerate_ged_graphs(g1: ComponentGraph, g2: ComponentGraph, costs: CostModel) -> float:
    return enumerate_ged(list(g1.labels), list(g1.parents),
                         list(g2.labels), list(g2.parents), costs)


def random_tree(rng: random.Random, max_nodes: int, pool: list[str],
                min_nodes: int = 0) -> ComponentGraph:
    """Random rooted tree with distinct labels drawn from a shared pool."""
    n = rng.randint(min_nodes, max_nodes)
    if n == 0:
        return ComponentGraph.empty()
    parents = tuple([-1] + [rng.randrange(i) for i in range(1, n)])
    labels = tuple(rng.sample(pool, n))
    return ComponentGraph(labels=labels, parents=parents)


def random_raw_tree(rng: random.Random, max_nodes: int, alphabet: str):
    """Like random_tree but allows duplicate labels; for kernel-level tests."""
    n = rng.randint(0, max_nodes)
    parents = ([-1] + [rng.randrange(i) for i in range(1, n)]) if n else []
    labels = [rng.choice(alphabet) for _ in range(n)]
    return labels, parents


def naive_deepest_component(file_path: str, components) -> str | None:
    """Longest component that is a whole-segment prefix of the file path."""
    best = None
    for component in components:
        if file_path == component or file_path.startswith(component + "/"):
            if best is None or len(component) > len(best):
                best = component
    return best


def nearest_rank_by_scan(values, p: float) -> float:
    """Smallest value whose cumulative share of the sample reaches p."""
    ordered = sorted(values)
    n = len(ordered)
    for v in ordered:
        if sum(1 for x in ordered if x <= v) / n >= p:
            return v
    return ordered[-1]
