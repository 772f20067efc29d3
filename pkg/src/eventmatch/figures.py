"""Matplotlib renderings written next to the delimited reports.

Figures use fixed layouts (no randomized placement) and fixed PNG metadata
so reruns with identical inputs produce byte-identical image files, matching
the determinism contract of the text reports.
"""

from __future__ import annotations

import io
import math
from typing import Mapping

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.lines import Line2D
from pathlib import Path

from .corpus import Researcher
from .matching import BaselineReport, MatchEdge
from .reports import atomic_write_bytes, fmt_num
from .seating import SeatingPlan
from .survey import SurveyResponse

_PNG_METADATA = {"Software": "eventmatch"}
_DPI = 110


def _save(fig, path: str | Path) -> Path:
    buffer = io.BytesIO()
    fig.savefig(buffer, format="png", dpi=_DPI, metadata=_PNG_METADATA)
    plt.close(fig)
    return atomic_write_bytes(path, buffer.getvalue())


def _circle_positions(count: int, radius: float = 1.0) -> list[tuple[float, float]]:
    return [
        (radius * math.cos(2 * math.pi * i / count - math.pi / 2),
         radius * math.sin(2 * math.pi * i / count - math.pi / 2))
        for i in range(count)
    ]


def interest_network_png(
    surveys: list[SurveyResponse] | tuple[SurveyResponse, ...],
    edges: list[MatchEdge],
    researchers: Mapping[str, Researcher],
    path: str | Path,
) -> Path:
    """Attendees on a circle, linked where strong interests overlap.

    Line width scales with the number of shared topics; dashed lines mark
    pairs ruled out for prior collaboration.
    """
    ids = sorted(s.researcher_id for s in surveys)
    pos = dict(zip(ids, _circle_positions(len(ids))))
    fig, ax = plt.subplots(figsize=(7.2, 7.2))
    for edge in sorted(edges, key=lambda e: e.pair):
        shared = edge.shared_strong_interests
        if not shared or edge.a_id not in pos or edge.b_id not in pos:
            continue
        (xa, ya), (xb, yb) = pos[edge.pair[0]], pos[edge.pair[1]]
        ax.plot(
            [xa, xb],
            [ya, yb],
            color="#777777" if edge.excluded_prior_collaboration else "#2a6f97",
            linestyle="--" if edge.excluded_prior_collaboration else "-",
            linewidth=0.8 + 0.8 * len(shared),
            zorder=1,
        )
        ax.annotate(
            ";".join(sorted(shared)),
            ((xa + xb) / 2, (ya + yb) / 2),
            fontsize=6,
            color="#444444",
            ha="center",
            va="center",
            zorder=2,
        )
    for rid in ids:
        x, y = pos[rid]
        ax.scatter([x], [y], s=220, color="#f4a259", edgecolor="#333333", zorder=3)
        ax.annotate(
            researchers[rid].name,
            (x * 1.16, y * 1.16),
            fontsize=8,
            ha="center",
            va="center",
            zorder=4,
        )
    legend = [
        Line2D([0], [0], color="#2a6f97", label="shared strong interest"),
        Line2D([0], [0], color="#777777", linestyle="--", label="prior collaborators"),
    ]
    ax.legend(handles=legend, loc="lower left", fontsize=7)
    ax.set_title("Attendees by shared strong interests")
    ax.set_xlim(-1.45, 1.45)
    ax.set_ylim(-1.45, 1.45)
    ax.set_aspect("equal")
    ax.axis("off")
    return _save(fig, path)


def seating_chart_png(
    plan: SeatingPlan, researchers: Mapping[str, Researcher], path: str | Path
) -> Path:
    """One circle per table with attendees placed around it."""
    count = len(plan.tables)
    cols = max(1, math.ceil(math.sqrt(count)))
    rows = math.ceil(count / cols)
    fig, ax = plt.subplots(figsize=(3.6 * cols, 3.4 * rows))
    for index, table in enumerate(plan.tables):
        cx = (index % cols) * 3.2
        cy = -(index // cols) * 3.2
        ax.add_patch(plt.Circle((cx, cy), 0.62, color="#cde0ec", zorder=1))
        ax.annotate(
            f"table {index}", (cx, cy), fontsize=9, ha="center", va="center", zorder=2
        )
        members = sorted(table)
        for spot, rid in enumerate(members):
            angle = 2 * math.pi * spot / max(len(members), 1) - math.pi / 2
            x = cx + 1.12 * math.cos(angle)
            y = cy + 1.12 * math.sin(angle)
            ax.scatter([x], [y], s=160, color="#f4a259", edgecolor="#333333", zorder=3)
            ax.annotate(
                researchers[rid].name,
                (x, y - 0.32),
                fontsize=7,
                ha="center",
                va="center",
                zorder=4,
            )
    ax.set_title(f"Seating chart (objective {fmt_num(plan.objective)})")
    ax.set_xlim(-1.8, (cols - 1) * 3.2 + 1.8)
    ax.set_ylim(-(rows - 1) * 3.2 - 1.8, 1.8)
    ax.set_aspect("equal")
    ax.axis("off")
    return _save(fig, path)


def baseline_histogram_png(
    report: BaselineReport, totals: list[float], path: str | Path
) -> Path:
    """Distribution of random-pairing totals with the engine total marked."""
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.hist(totals, bins=30, color="#cde0ec", edgecolor="#6699bb")
    ax.axvline(
        report.random_mean,
        color="#555555",
        linestyle="--",
        label=f"random mean {fmt_num(round(report.random_mean, 3))}",
    )
    ax.axvline(
        report.engine_total,
        color="#c1121f",
        label=f"engine total {fmt_num(report.engine_total)}",
    )
    ax.set_xlabel("total adjusted score of a pairing")
    ax.set_ylabel("trials")
    ax.set_title(f"Engine vs random pairing (ratio {fmt_num(round(report.ratio, 3))})")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return _save(fig, path)
