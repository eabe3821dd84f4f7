"""Set and tree similarity against naive oracles and metric properties."""

from __future__ import annotations

import random

import pytest

from review_diffusion.model import ComponentGraph
from review_diffusion.similarity import (
    GED_APPROX,
    GED_EXACT,
    JACCARD,
    UNIT_COSTS,
    CostModel,
    Similarity,
    ged,
    ged_approx,
    ged_exact,
    ged_similarity,
    jaccard,
    teardown_cost,
)

import oracles

POOL = [f"comp{i}" for i in range(16)]


def test_jaccard_known_values():
    assert jaccard({"a", "b"}, {"b", "c"}).value == pytest.approx(1 / 3)
    assert jaccard({"a"}, {"a"}).value == 1.0
    assert jaccard(set(), set()).value == 1.0
    assert jaccard({"a"}, set()).value == 0.0
    assert jaccard({"a"}, {"b"}).value == 0.0


def test_jaccard_matches_counting_oracle():
    rng = random.Random(5)
    universe = [f"u{i}" for i in range(30)]
    for _ in range(500):
        a = frozenset(rng.sample(universe, rng.randint(0, 12)))
        b = frozenset(rng.sample(universe, rng.randint(0, 12)))
        assert jaccard(a, b).value == pytest.approx(oracles.jaccard_by_counting(a, b))


def test_jaccard_is_symmetric_and_reflexive():
    rng = random.Random(6)
    universe = [f"u{i}" for i in range(20)]
    for _ in range(200):
        a = frozenset(rng.sample(universe, rng.randint(0, 8)))
        b = frozenset(rng.sample(universe, rng.randint(0, 8)))
        assert jaccard(a, b).value == jaccard(b, a).value
        if a:
            assert jaccard(a, a).value == 1.0
    assert jaccard(frozenset(), frozenset()).method == JACCARD


def test_similarity_value_is_validated():
    with pytest.raises(ValueError):
        Similarity(value=1.5, method=JACCARD)
    with pytest.raises(ValueError):
        Similarity(value=-0.1, method=JACCARD)
    with pytest.raises(ValueError):
        Similarity(value=0.5, method=JACCARD, defined=False)
    undef = Similarity.undefined(GED_EXACT)
    assert not undef.defined and undef.value is None


def test_cost_model_rejects_negative_costs():
    with pytest.raises(ValueError):
        CostModel(node_delete=-1.0)
    model = CostModel(node_substitute=3.0)
    assert model.substitute("a", "a") == 0.0
    assert model.substitute("a", "b") == 3.0


def test_exact_ged_matches_enumeration_on_small_trees():
    rng = random.Random(11)
    for trial in range(120):
        costs = UNIT_COSTS if trial % 2 else CostModel(
            node_delete=rng.choice([0.5, 1.0, 2.0]),
            node_insert=rng.choice([0.5, 1.0, 2.0]),
            node_substitute=rng.choice([0.5, 1.0, 3.0]),
            edge_delete=rng.choice([0.5, 1.0, 2.0]),
            edge_insert=rng.choice([0.5, 1.0, 2.0]),
        )
        g1 = oracles.random_tree(rng, 4, POOL)
        g2 = oracles.random_tree(rng, 4, POOL)
        want = oracles.enumerate_ged_graphs(g1, g2, costs)
        assert ged_exact(g1, g2, costs) == pytest.approx(want, abs=1e-9)


def test_greedy_bound_never_undercuts_exact():
    rng = random.Random(12)
    for _ in range(150):
        g1 = oracles.random_tree(rng, 8, POOL, min_nodes=5)
        g2 = oracles.random_tree(rng, 8, POOL, min_nodes=5)
        assert ged_approx(g1, g2) >= ged_exact(g1, g2) - 1e-9


def test_exact_ged_is_symmetric_under_unit_costs():
    rng = random.Random(13)
    for _ in range(80):
        g1 = oracles.random_tree(rng, 4, POOL)
        g2 = oracles.random_tree(rng, 4, POOL)
        assert ged_exact(g1, g2) == pytest.approx(ged_exact(g2, g1))


def test_exact_ged_is_zero_on_identical_trees():
    rng = random.Random(14)
    for _ in range(40):
        g = oracles.random_tree(rng, 6, POOL)
        assert ged_exact(g, g) == 0.0


def test_exact_ged_triangle_inequality_on_small_trees():
    rng = random.Random(15)
    for _ in range(60):
        a = oracles.random_tree(rng, 4, POOL)
        b = oracles.random_tree(rng, 4, POOL)
        c = oracles.random_tree(rng, 4, POOL)
        assert ged_exact(a, c) <= ged_exact(a, b) + ged_exact(b, c) + 1e-9


def test_ged_routes_by_combined_node_budget():
    small = ComponentGraph(labels=("", "a"), parents=(-1, 0))
    big = ComponentGraph(labels=tuple(["" ] + [f"n{i}" for i in range(6)]),
                         parents=tuple([-1] + [0] * 6))
    cost, method = ged(small, small, exact_max_nodes=4)
    assert method == GED_EXACT and cost == 0.0
    cost, method = ged(small, big, exact_max_nodes=4)
    assert method == GED_APPROX
    cost, method = ged(small, big, exact_max_nodes=9)
    assert method == GED_EXACT


def test_similarity_normalization_bounds():
    rng = random.Random(16)
    for _ in range(300):
        g1 = oracles.random_tree(rng, 5, POOL)
        g2 = oracles.random_tree(rng, 5, POOL)
        sim = ged_similarity(g1, g2)
        assert 0.0 <= sim.value <= 1.0


def test_similarity_of_graph_with_itself_is_one():
    rng = random.Random(17)
    for _ in range(50):
        g = oracles.random_tree(rng, 6, POOL)
        assert ged_similarity(g, g).value == 1.0


def test_similarity_against_empty_graph_is_zero():
    rng = random.Random(18)
    empty = ComponentGraph.empty()
    assert ged_similarity(empty, empty).value == 1.0
    for _ in range(50):
        g = oracles.random_tree(rng, 6, POOL, min_nodes=1)
        assert ged_similarity(g, empty).value == 0.0
        assert ged_similarity(empty, g).value == 0.0


def test_teardown_cost_bounds_every_edit_cost():
    rng = random.Random(19)
    for _ in range(100):
        g1 = oracles.random_tree(rng, 4, POOL)
        g2 = oracles.random_tree(rng, 4, POOL)
        assert ged_exact(g1, g2) <= teardown_cost(g1, g2) + 1e-9


def _graft(g: ComponentGraph, sub: ComponentGraph) -> ComponentGraph:
    """Attach ``sub`` under g's root (a fresh root if g is empty)."""
    if g.is_empty:
        labels = ("*root*",) + sub.labels
        parents = (-1,) + tuple(0 if p == -1 else p + 1 for p in sub.parents)
        return ComponentGraph(labels, parents)
    offset = g.node_count
    labels = g.labels + sub.labels
    parents = g.parents + tuple(0 if p == -1 else p + offset for p in sub.parents)
    return ComponentGraph(labels, parents)


def test_grafting_identical_subtree_never_lowers_similarity():
    # empirical sweep; a failure here is a genuine finding and the
    # message below records the counterexample
    rng = random.Random(20)
    violations = []
    for trial in range(400):
        g1 = oracles.random_tree(rng, 3, POOL)
        g2 = oracles.random_tree(rng, 3, POOL)
        sub = oracles.random_tree(rng, 3, [f"sub{i}" for i in range(6)], min_nodes=1)
        before = ged_similarity(g1, g2, exact_max_nodes=64).value
        after = ged_similarity(_graft(g1, sub), _graft(g2, sub), exact_max_nodes=64).value
        if after < before - 1e-12:
            violations.append((trial, g1, g2, sub, before, after))
    assert not violations, f"similarity dropped after grafting: {violations[:3]}"
