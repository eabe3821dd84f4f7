"""Pseudonymization, CSV tables, and SVG rendering."""

from __future__ import annotations

from pathlib import Path

import pytest

from review_diffusion.errors import ConfigurationError, NothingToPlotError
from review_diffusion.metrics import (
    LinkedRatio,
    SimilarityRecord,
    ecdf,
    edge_similarities,
    summarize,
)
from review_diffusion.model import ComponentGraph, EnhancementMaps, build_network
from review_diffusion.report import (
    Pseudonymizer,
    anonymize,
    leaf_components,
    read_components_csv,
    read_similarities_csv,
    read_summary_csv,
    render_cdf,
    render_circular,
    write_components_csv,
    write_linked_ratio_csv,
    write_similarities_csv,
    write_summary_csv,
)
from review_diffusion.similarity import GED_EXACT, JACCARD, Similarity

from helpers import reference, review

GOLDEN = Path(__file__).parent / "golden"

CHORD_MARK = 'stroke="#555555"'


def sim(value: float, method: str = JACCARD) -> Similarity:
    return Similarity(value=value, method=method)


# ---------------------------------------------------------------- anonymize

def test_pseudonyms_are_stable_per_salt_and_distinct_across_salts():
    a1, a2, b = Pseudonymizer("s1"), Pseudonymizer("s1"), Pseudonymizer("s2")
    assert a1.user("alice") == a2.user("alice")
    assert a1.user("alice") != b.user("alice")
    assert a1.team("core") == a2.team("core")
    assert a1.team("core") != b.team("core")
    assert a1.fingerprint() == a2.fingerprint() != b.fingerprint()


def test_pseudonyms_carry_kind_prefixes_and_fixed_width():
    codec = Pseudonymizer("pepper")
    for value, prefix in [(codec.user("alice"), "u_"), (codec.team("core"), "t_"),
                          (codec.component("svc/auth"), "c_"),
                          (codec.review(review(7)), "r_")]:
        assert value.startswith(prefix)
        assert len(value) == len(prefix) + 12
        assert all(ch in "0123456789abcdef" for ch in value[len(prefix):])


def test_structural_sentinels_pass_through():
    codec = Pseudonymizer("pepper")
    assert codec.team("__no_team__") == "__no_team__"
    assert codec.component("__unowned__") == "__unowned__"
    assert codec.component("") == ""


def test_empty_salt_is_rejected():
    with pytest.raises(ConfigurationError):
        Pseudonymizer("")


def test_anonymize_dispatch():
    net = build_network([reference(review(1), review(2))])
    renamed = anonymize(net, "pepper")
    assert renamed.edge_count == 1
    assert all(str(r).startswith("r_") for r in renamed.reviews)
    with pytest.raises(TypeError):
        anonymize(3.14, "pepper")


def test_anonymization_preserves_every_similarity(reference_cluster):
    reviews, events = reference_cluster
    network = build_network(events, extra_reviews=[reviews[4]])
    maps = EnhancementMaps(
        participants={r: frozenset({f"u{i}", f"u{i + 1}"}) for i, r in enumerate(reviews)},
        components={r: ComponentGraph(("", f"c{i}"), (-1, 0)) for i, r in enumerate(reviews)},
        teams={r: frozenset({f"t{i % 2}"}) for i, r in enumerate(reviews)},
    )
    codec = Pseudonymizer("pepper")
    raw = {r.edge: r for r in edge_similarities(network, maps)}
    anon = edge_similarities(codec.network(network), codec.maps(maps))
    assert len(anon) == len(raw)
    for record in anon:
        match = raw[next(e for e in raw if (codec.review(e[0]), codec.review(e[1])) == record.edge)]
        assert record.participants_sim.value == match.participants_sim.value
        assert record.components_sim.value == match.components_sim.value
        assert record.teams_sim.value == match.teams_sim.value


# ------------------------------------------------------------------ tables

def _records():
    return [
        SimilarityRecord("r_a", "r_b", sim(0.25), sim(0.5, GED_EXACT), sim(1.0)),
        SimilarityRecord("r_b", "r_c", Similarity.undefined(JACCARD),
                         Similarity.undefined(""), sim(0.0)),
    ]


def test_similarities_round_trip(tmp_path):
    path = tmp_path / "similarities.csv"
    write_similarities_csv(_records(), path)
    loaded = read_similarities_csv(path)
    assert loaded == _records()


def test_similarity_table_uses_crlf_and_six_decimals(tmp_path):
    path = tmp_path / "similarities.csv"
    write_similarities_csv(_records(), path)
    raw = path.read_bytes()
    assert b"\r\n" in raw
    assert b"0.250000" in raw
    assert b",," in raw  # undefined value serializes as an empty field


def test_similarity_reader_rejects_foreign_headers(tmp_path):
    path = tmp_path / "similarities.csv"
    path.write_text("a,b,c\r\n1,2,3\r\n", encoding="utf-8")
    with pytest.raises(ValueError):
        read_similarities_csv(path)


def test_summary_round_trip(tmp_path):
    summary = summarize(_records(), LinkedRatio(reviews=4, linked=3))
    path = tmp_path / "summary.csv"
    write_summary_csv(summary, path)
    loaded = read_summary_csv(path)
    for name in ("participants", "components", "teams"):
        got, want = loaded.dimension(name), summary.dimension(name)
        assert got.count == want.count and got.defined == want.defined
        if want.median is None:
            assert got.median is None
        else:
            assert got.median == pytest.approx(want.median)


def test_linked_ratio_table_contents(tmp_path):
    path = tmp_path / "linked_ratio.csv"
    write_linked_ratio_csv(LinkedRatio(reviews=5, linked=4), path)
    assert path.read_bytes() == b"reviews,linked,ratio\r\n5,4,0.800000\r\n"


def test_components_table_round_trips_sorted(tmp_path):
    rows = [("r_b", "c_2", "t_1"), ("r_a", "c_1", "t_1")]
    path = tmp_path / "components.csv"
    write_components_csv(rows, path)
    assert read_components_csv(path) == sorted(rows)


# --------------------------------------------------------------------- svg

def _cdf_inputs():
    return {
        "participants": ecdf([0.0, 0.5, 0.5, 1.0]),
        "components": ecdf([0.25, 0.75]),
        "teams": ecdf([1.0]),
    }


def test_render_cdf_is_deterministic_and_matches_golden(tmp_path):
    first = (tmp_path / "a.svg")
    second = (tmp_path / "b.svg")
    render_cdf(_cdf_inputs(), first)
    render_cdf(_cdf_inputs(), second)
    assert first.read_bytes() == second.read_bytes()
    assert first.read_bytes() == (GOLDEN / "cdf_small.svg").read_bytes()


def test_render_cdf_skips_missing_dimensions(tmp_path):
    out = tmp_path / "one.svg"
    render_cdf({"participants": ecdf([0.5]), "components": None}, out)
    text = out.read_text(encoding="utf-8")
    assert "participants" in text and "components" not in text


def test_render_cdf_requires_at_least_one_curve(tmp_path):
    with pytest.raises(NothingToPlotError):
        render_cdf({}, tmp_path / "x.svg")


def test_leaf_components_are_the_touched_components():
    graph = ComponentGraph(("", "a", "a/b", "d"), (-1, 0, 1, 0))
    assert leaf_components(graph) == frozenset({"a/b", "d"})


def _circular_fixture():
    a, b, c = review(1), review(2), review(3)
    network = build_network([
        reference(a, b, minute=1),
        reference(b, c, minute=2),
        reference(a, c, minute=3),
    ])
    maps = EnhancementMaps(components={
        a: ComponentGraph(("", "x", "x/auth", "x/db"), (-1, 0, 1, 1)),
        b: ComponentGraph(("", "y", "y/web"), (-1, 0, 1)),
        c: ComponentGraph(("", "x", "x/auth"), (-1, 0, 1)),
    })
    owners = {"x/auth": "t1", "x/db": "t1", "y/web": "t2"}
    rank = {(a, b): 0.2, (b, c): 0.9, (a, c): None}
    return network, maps, owners, rank


def test_circular_draws_one_chord_per_component_pair(tmp_path):
    network, maps, owners, rank = _circular_fixture()
    out = tmp_path / "circ.svg"
    render_circular(network, maps, out, owners=owners, chord_rank=rank)
    text = out.read_text(encoding="utf-8")
    # pairs: auth-web, db-web (via a->b), auth-web again (b->c, merged),
    # auth-db (a->c) => 3 distinct chords
    assert text.count(CHORD_MARK) == 3


def test_circular_caps_chords_keeping_lowest_similarity_first(tmp_path):
    network, maps, owners, rank = _circular_fixture()
    capped = tmp_path / "capped.svg"
    render_circular(network, maps, capped, owners=owners, max_chords=2, chord_rank=rank)
    text = capped.read_text(encoding="utf-8")
    assert text.count(CHORD_MARK) == 2
    # the unranked auth-db chord is dropped first; both kept chords
    # involve y/web, whose rank came from the 0.2 edge
    full = tmp_path / "full.svg"
    render_circular(network, maps, full, owners=owners, chord_rank=rank)
    assert text.count(CHORD_MARK) < full.read_text(encoding="utf-8").count(CHORD_MARK)


def test_circular_matches_golden(tmp_path):
    network, maps, owners, rank = _circular_fixture()
    out = tmp_path / "circ.svg"
    render_circular(network, maps, out, owners=owners, chord_rank=rank)
    assert out.read_bytes() == (GOLDEN / "circular_small.svg").read_bytes()


def test_circular_requires_reviews_and_components(tmp_path):
    network, maps, owners, _ = _circular_fixture()
    with pytest.raises(NothingToPlotError):
        render_circular(build_network([]), EnhancementMaps(), tmp_path / "x.svg")
    with pytest.raises(NothingToPlotError):
        render_circular(network, EnhancementMaps(), tmp_path / "y.svg")
