"""CSV export and re-import of measurement outputs.

All writers emit RFC-4180-style CSV (UTF-8, CRLF, header row) with
floats at 6 decimal places and rows in canonical order, so repeated
runs produce byte-identical files. Undefined values serialize as empty
fields next to their defined flag.
"""

from __future__ import annotations

import csv
from pathlib import Path

from ..metrics import DimensionSummary, LinkedRatio, SimilarityRecord, Summary
from ..similarity import JACCARD, Similarity

SIMILARITIES_HEADER = [
    "source", "target",
    "participants_sim", "participants_defined",
    "components_sim", "components_method", "components_defined",
    "teams_sim", "teams_defined",
]
SUMMARY_HEADER = ["dimension", "count", "defined", "min", "p25", "median", "p75", "max", "mean"]
LINKED_RATIO_HEADER = ["reviews", "linked", "ratio"]
COMPONENTS_HEADER = ["review", "component", "team"]

SIMILARITIES_FILENAME = "similarities.csv"
SUMMARY_FILENAME = "summary.csv"
LINKED_RATIO_FILENAME = "linked_ratio.csv"
COMPONENTS_FILENAME = "components.csv"


def _float(value: float | None) -> str:
    return "" if value is None else f"{value:.6f}"


def _bool(value: bool) -> str:
    return "true" if value else "false"


def _parse_bool(text: str) -> bool:
    if text == "true":
        return True
    if text == "false":
        return False
    raise ValueError(f"expected true/false, got {text!r}")


def write_similarities_csv(records: list[SimilarityRecord], out_path: str | Path) -> Path:
    out_path = Path(out_path)
    with out_path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SIMILARITIES_HEADER)
        for r in records:
            writer.writerow([
                str(r.source), str(r.target),
                _float(r.participants_sim.value), _bool(r.participants_sim.defined),
                _float(r.components_sim.value), r.components_sim.method,
                _bool(r.components_sim.defined),
                _float(r.teams_sim.value), _bool(r.teams_sim.defined),
            ])
    return out_path


def read_similarities_csv(path: str | Path) -> list[SimilarityRecord]:
    path = Path(path)
    records = []
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != SIMILARITIES_HEADER:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        for row in reader:
            records.append(SimilarityRecord(
                source=row["source"],
                target=row["target"],
                participants_sim=_parse_similarity(row["participants_sim"], JACCARD,
                                                   row["participants_defined"]),
                components_sim=_parse_similarity(row["components_sim"],
                                                 row["components_method"],
                                                 row["components_defined"]),
                teams_sim=_parse_similarity(row["teams_sim"], JACCARD,
                                            row["teams_defined"]),
            ))
    return records


def _parse_similarity(value: str, method: str, defined: str) -> Similarity:
    if _parse_bool(defined):
        return Similarity(value=float(value), method=method)
    return Similarity.undefined(method)


def write_summary_csv(summary: Summary, out_path: str | Path) -> Path:
    out_path = Path(out_path)
    with out_path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SUMMARY_HEADER)
        for dim in summary.dimensions:
            writer.writerow([
                dim.dimension, dim.count, dim.defined,
                _float(dim.minimum), _float(dim.p25), _float(dim.median),
                _float(dim.p75), _float(dim.maximum), _float(dim.mean),
            ])
    return out_path


def read_summary_csv(path: str | Path) -> Summary:
    path = Path(path)
    dims = []
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != SUMMARY_HEADER:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        for row in reader:
            dims.append(DimensionSummary(
                dimension=row["dimension"],
                count=int(row["count"]),
                defined=int(row["defined"]),
                minimum=float(row["min"]) if row["min"] else None,
                p25=float(row["p25"]) if row["p25"] else None,
                median=float(row["median"]) if row["median"] else None,
                p75=float(row["p75"]) if row["p75"] else None,
                maximum=float(row["max"]) if row["max"] else None,
                mean=float(row["mean"]) if row["mean"] else None,
            ))
    return Summary(dimensions=tuple(dims))


def write_linked_ratio_csv(linked: LinkedRatio, out_path: str | Path) -> Path:
    out_path = Path(out_path)
    with out_path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(LINKED_RATIO_HEADER)
        writer.writerow([linked.reviews, linked.linked, _float(linked.ratio)])
    return out_path


def write_components_csv(rows: list[tuple[str, str, str]], out_path: str | Path) -> Path:
    """Rows of (review, component, owning team), sorted for stable output."""
    out_path = Path(out_path)
    with out_path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(COMPONENTS_HEADER)
        for review, component, team in sorted(rows):
            writer.writerow([review, component, team])
    return out_path


def read_components_csv(path: str | Path) -> list[tuple[str, str, str]]:
    path = Path(path)
    rows = []
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != COMPONENTS_HEADER:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        for row in reader:
            rows.append((row["review"], row["component"], row["team"]))
    return rows


def export_csv(data, out_path: str | Path) -> Path:
    """Write ``data`` to ``out_path`` in the schema matching its type."""
    if isinstance(data, Summary):
        return write_summary_csv(data, out_path)
    if isinstance(data, LinkedRatio):
        return write_linked_ratio_csv(data, out_path)
    if isinstance(data, list) and all(isinstance(r, SimilarityRecord) for r in data):
        return write_similarities_csv(data, out_path)
    raise TypeError(f"no CSV schema for {type(data).__name__}")
