"""Report rendering and atomic file output.

Every artifact is rendered to a string first and written via temp-file +
rename, so a rerun during live event prep can never leave a half-written
report behind. All output is UTF-8 with \\n newlines and deterministically
ordered; identical inputs produce byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
import os
import tempfile
from pathlib import Path
from typing import Mapping

from .corpus import Researcher
from .discovery import ExpertHit
from .errors import InputError
from .matching import MatchEdge
from .scheduling import Schedule
from .seating import SeatingPlan
from .survey import SurveyResponse


def atomic_write_text(path: str | Path, text: str) -> Path:
    """Write text to path atomically (temp file + rename)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    return path


def atomic_write_bytes(path: str | Path, data: bytes) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    return path


def fmt_num(value: float) -> str:
    """Render scores without float noise: 11.0 -> '11', 10.5 -> '10.5'."""
    return f"{value:g}"


def _csv_buffer():
    buffer = io.StringIO()
    return buffer, csv.writer(buffer, lineterminator="\n")


def expert_hits_csv(hits: list[ExpertHit], researchers: Mapping[str, Researcher]) -> str:
    buffer, writer = _csv_buffer()
    writer.writerow(["rank", "researcher_id", "name", "score", "supporting_document_ids"])
    for rank, hit in enumerate(hits, start=1):
        writer.writerow(
            [
                rank,
                hit.researcher_id,
                researchers[hit.researcher_id].name,
                hit.score,
                ";".join(doc_id for doc_id, _ in hit.supporting_documents),
            ]
        )
    return buffer.getvalue()


def expanded_terms_csv(candidates: list[tuple[str, int]]) -> str:
    buffer, writer = _csv_buffer()
    writer.writerow(["rank", "term", "score"])
    for rank, (term, score) in enumerate(candidates, start=1):
        writer.writerow([rank, term, score])
    return buffer.getvalue()


def matches_csv(edges: list[MatchEdge]) -> str:
    buffer, writer = _csv_buffer()
    writer.writerow(
        [
            "researcher_a",
            "researcher_b",
            "shared_strong_interests",
            "methods_a_needs_b_offers",
            "methods_b_needs_a_offers",
            "reciprocal",
            "excluded",
            "base_score",
            "adjusted_score",
        ]
    )
    for edge in sorted(edges, key=lambda e: e.pair):
        a, b = edge.pair
        ab = edge.directed_ab if a == edge.a_id else edge.directed_ba
        ba = edge.directed_ba if a == edge.a_id else edge.directed_ab
        writer.writerow(
            [
                a,
                b,
                ";".join(sorted(edge.shared_strong_interests)),
                ";".join(sorted(ab)),
                ";".join(sorted(ba)),
                _bool(edge.reciprocal),
                _bool(edge.excluded_prior_collaboration),
                fmt_num(edge.base_score),
                fmt_num(edge.adjusted_score),
            ]
        )
    return buffer.getvalue()


def ranked_matches_csv(
    ranked: Mapping[str, list[MatchEdge]], researchers: Mapping[str, Researcher]
) -> str:
    buffer, writer = _csv_buffer()
    writer.writerow(
        [
            "researcher_id",
            "rank",
            "partner_id",
            "partner_name",
            "adjusted_score",
            "base_score",
            "reciprocal",
        ]
    )
    for rid in sorted(ranked):
        for rank, edge in enumerate(ranked[rid], start=1):
            partner = edge.other(rid)
            writer.writerow(
                [
                    rid,
                    rank,
                    partner,
                    researchers[partner].name,
                    fmt_num(edge.adjusted_score),
                    fmt_num(edge.base_score),
                    _bool(edge.reciprocal),
                ]
            )
    return buffer.getvalue()


def seating_csv(plan: SeatingPlan, researchers: Mapping[str, Researcher]) -> str:
    buffer, writer = _csv_buffer()
    writer.writerow(["table_index", "researcher_id", "name", "institution"])
    for index, table in enumerate(plan.tables):
        for rid in sorted(table):
            person = researchers[rid]
            writer.writerow([index, rid, person.name, person.institution])
    buffer.write(f"# objective={fmt_num(plan.objective)}\n")
    return buffer.getvalue()


def schedule_csv(schedule: Schedule) -> str:
    buffer, writer = _csv_buffer()
    writer.writerow(
        ["round", "room", "researcher_a", "researcher_b", "adjusted_score", "cross_institution"]
    )
    for meeting in schedule.meetings:
        a, b = meeting.pair
        writer.writerow(
            [
                meeting.round,
                meeting.room,
                a,
                b,
                fmt_num(meeting.adjusted_score),
                _bool(meeting.cross_institution),
            ]
        )
    return buffer.getvalue()


def export_interest_graph(
    surveys: list[SurveyResponse] | tuple[SurveyResponse, ...],
    edges: list[MatchEdge],
    researchers: Mapping[str, Researcher],
) -> str:
    """Undirected DOT graph of attendees linked by shared strong interests.

    Edge labels list the shared topics; weight is their count; pairs with a
    prior collaboration are drawn dashed. Nodes and edges are emitted in id
    order so output is diffable.
    """
    if not surveys:
        raise InputError("cannot export an interest graph without surveys")
    lines = ["graph interests {"]
    for rid in sorted(s.researcher_id for s in surveys):
        label = _dot_escape(researchers[rid].name)
        lines.append(f'  "{rid}" [label="{label}"];')
    for edge in sorted(edges, key=lambda e: e.pair):
        if not edge.shared_strong_interests:
            continue
        a, b = edge.pair
        label = _dot_escape(";".join(sorted(edge.shared_strong_interests)))
        attrs = f'label="{label}", weight={len(edge.shared_strong_interests)}'
        if edge.excluded_prior_collaboration:
            attrs += ", style=dashed"
        lines.append(f'  "{a}" -- "{b}" [{attrs}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_summary_json(summary: Mapping[str, object]) -> str:
    return json.dumps(summary, indent=2, sort_keys=True) + "\n"


def _bool(value: bool) -> str:
    return "true" if value else "false"


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')
