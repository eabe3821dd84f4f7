"""Per-edge measurement, ECDFs, quantiles, and summaries."""

from __future__ import annotations

import random

import pytest

from review_diffusion.errors import EmptyDistributionError, UndefinedRatioError
from review_diffusion.metrics import (
    COMPONENTS,
    DIMENSIONS,
    PARTICIPANTS,
    TEAMS,
    Ecdf,
    LinkedRatio,
    ecdf,
    edge_similarities,
    linked_counts,
    nearest_rank,
    summarize,
)
from review_diffusion.model import ComponentGraph, EnhancementMaps, build_network
from review_diffusion.similarity import ged_similarity, jaccard

import oracles
from helpers import reference, review


def _cluster_maps(reviews):
    graphs = {
        reviews[0]: ComponentGraph(("", "a"), (-1, 0)),
        reviews[1]: ComponentGraph(("", "a", "a/x"), (-1, 0, 1)),
        reviews[2]: ComponentGraph(("", "b"), (-1, 0)),
        reviews[3]: ComponentGraph.empty(),
    }
    participants = {
        reviews[0]: frozenset({"alice", "bob"}),
        reviews[1]: frozenset({"bob", "carol"}),
        reviews[2]: frozenset({"dan"}),
        reviews[3]: frozenset({"alice"}),
    }
    teams = {
        reviews[0]: frozenset({"t1"}),
        reviews[1]: frozenset({"t1", "t2"}),
        reviews[2]: frozenset({"t2"}),
        reviews[3]: frozenset({"t3"}),
    }
    return EnhancementMaps(participants=participants, components=graphs, teams=teams)


def test_records_follow_canonical_edge_order(reference_cluster):
    reviews, events = reference_cluster
    network = build_network(events)
    maps = _cluster_maps(reviews)
    records = edge_similarities(network, maps)
    assert [r.edge for r in records] == [(e.source, e.target) for e in network.sorted_edges()]


def test_each_record_matches_direct_recomputation(reference_cluster):
    reviews, events = reference_cluster
    network = build_network(events)
    maps = _cluster_maps(reviews)
    for record in edge_similarities(network, maps):
        s, t = record.edge
        assert record.participants_sim.value == pytest.approx(
            jaccard(maps.participants[s], maps.participants[t]).value)
        assert record.components_sim.value == pytest.approx(
            ged_similarity(maps.components[s], maps.components[t]).value)
        assert record.teams_sim.value == pytest.approx(
            jaccard(maps.teams[s], maps.teams[t]).value)


def test_missing_enhancement_makes_dimension_undefined(reference_cluster):
    reviews, events = reference_cluster
    network = build_network(events)
    maps = _cluster_maps(reviews)
    participants = dict(maps.participants)
    del participants[reviews[2]]
    records = edge_similarities(network, EnhancementMaps(
        participants=participants, components=maps.components, teams=maps.teams))
    touching = [r for r in records if reviews[2] in r.edge]
    assert touching and all(not r.participants_sim.defined for r in touching)
    assert all(r.teams_sim.defined for r in records)


def test_parallel_measurement_matches_serial(reference_cluster):
    reviews, events = reference_cluster
    network = build_network(events)
    maps = _cluster_maps(reviews)
    assert edge_similarities(network, maps) == edge_similarities(network, maps, parallelism=4)


def test_ecdf_collapses_ties():
    curve = ecdf([0.2, 0.2, 0.8])
    assert curve.points == ((0.2, pytest.approx(2 / 3)), (0.8, 1.0))


def test_ecdf_is_monotone_and_ends_at_one():
    rng = random.Random(31)
    for _ in range(50):
        values = [rng.choice([0.0, 0.25, 0.5, 0.5, 1.0]) for _ in range(rng.randint(1, 40))]
        curve = ecdf(values)
        xs = [v for v, _ in curve.points]
        ps = [p for _, p in curve.points]
        assert xs == sorted(set(xs))
        assert all(a < b for a, b in zip(ps, ps[1:])) or len(ps) == 1
        assert ps[-1] == 1.0


def test_ecdf_rejects_bad_input():
    with pytest.raises(EmptyDistributionError):
        ecdf([])
    with pytest.raises(ValueError):
        ecdf([1.5])
    with pytest.raises(ValueError):
        ecdf([float("nan")])
    with pytest.raises(ValueError):
        Ecdf(points=((0.5, 0.5), (0.5, 1.0)))
    with pytest.raises(ValueError):
        Ecdf(points=((0.5, 0.7),))


def test_nearest_rank_matches_scan_oracle():
    rng = random.Random(32)
    for _ in range(200):
        values = sorted(round(rng.random(), 3) for _ in range(rng.randint(1, 25)))
        for p in (0.25, 0.5, 0.75, 1.0):
            assert nearest_rank(values, p) == oracles.nearest_rank_by_scan(values, p)
    with pytest.raises(ValueError):
        nearest_rank([0.5], 0.0)
    with pytest.raises(ValueError):
        nearest_rank([], 0.5)


def test_summarize_reports_all_dimensions(reference_cluster):
    reviews, events = reference_cluster
    network = build_network(events)
    records = edge_similarities(network, _cluster_maps(reviews))
    summary = summarize(records, LinkedRatio(reviews=5, linked=4))
    assert {d.dimension for d in summary.dimensions} == set(DIMENSIONS)
    for name in DIMENSIONS:
        dim = summary.dimension(name)
        assert dim.count == len(records)
        assert dim.defined == len(records)
        values = sorted(r.get(name).value for r in records)
        assert dim.minimum == values[0]
        assert dim.maximum == values[-1]
        assert dim.median == nearest_rank(values, 0.5)
        assert dim.mean == pytest.approx(sum(values) / len(values))
    assert summary.linked.ratio == pytest.approx(0.8)


def test_summarize_tolerates_no_records():
    summary = summarize([])
    for name in DIMENSIONS:
        dim = summary.dimension(name)
        assert dim.count == 0 and dim.defined == 0
        assert dim.median is None and dim.mean is None


def test_linked_counts_requires_population(reference_cluster):
    reviews, events = reference_cluster
    network = build_network(events)
    with pytest.raises(UndefinedRatioError):
        linked_counts(network, set())
    counts = linked_counts(network, set(reviews))
    assert counts.linked == 4 and counts.reviews == 5


def test_linked_ratio_bounds_are_validated():
    with pytest.raises(ValueError):
        LinkedRatio(reviews=0, linked=0)
    with pytest.raises(ValueError):
        LinkedRatio(reviews=2, linked=3)
