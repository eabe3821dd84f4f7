from __future__ import annotations

from pathlib import Path

import pytest

from review_diffusion.synth import SynthParams, generate

from helpers import reference, review


@pytest.fixture
def reference_cluster():
    """Five reviews where c0..c3 are cross-linked and c4 stays isolated.

    Edges: c1->c2, c2->c3, c2->c0, c3->c2, c3->c0, c3->c1. The expected
    network has 5 nodes, 6 edges, and a linked ratio of 0.8.
    """
    c = [review(i + 1) for i in range(5)]
    events = [
        reference(c[1], c[2], minute=1),
        reference(c[2], c[3], minute=2),
        reference(c[2], c[0], minute=3),
        reference(c[3], c[2], minute=4),
        reference(c[3], c[0], minute=5),
        reference(c[3], c[1], minute=6),
    ]
    return c, events


@pytest.fixture(scope="session")
def synth_corpus(tmp_path_factory) -> dict[str, Path]:
    """Seed-42 synthetic organization shared by pipeline-level tests."""
    base = tmp_path_factory.mktemp("corpus42")
    dump = base / "dump"
    snaps = base / "snapshots"
    generate(SynthParams(seed=42), dump, snaps)
    return {"dump": dump, "snapshots": snaps}
