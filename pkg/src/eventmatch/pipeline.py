"""End-to-end pipeline: load inputs, score, optimize, write every artifact.

Stages run in a fixed order and any failure aborts with the stage name
attached. Given the same config (including seed) the whole output directory
is byte-identical across reruns.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from . import figures, reports
from .corpus import build_collaboration_graph, load_corpus
from .discovery import build_index, find_experts, load_keyword_spec
from .errors import InputError, PipelineError
from .matching import (
    MatchWeights,
    all_matches,
    baseline_comparison,
    rank_matches,
    random_matching_totals,
)
from .scheduling import EventWindow, build_schedule, validate_schedule
from .seating import assign_tables
from .survey import load_topic_catalog, parse_surveys

_PATH_KEYS = ("researchers", "documents", "surveys", "topics", "keywords")
_SCALAR_DEFAULTS = {
    "rounds": 3,
    "rooms": 3,
    "round_minutes": 15,
    "tables": 3,
    "capacity": 4,
    "per_attendee_k": 3,
    "seed": 42,
    "trials": 1000,
}
_KNOWN_KEYS = set(_PATH_KEYS) | set(_SCALAR_DEFAULTS) | {"weights", "output_dir"}


@dataclass(frozen=True)
class PipelineConfig:
    researchers_path: Path
    documents_path: Path
    surveys_path: Path
    topics_path: Path
    keywords_path: Path | None
    output_dir: Path
    weights: MatchWeights
    window: EventWindow
    tables: int
    capacity: int
    per_attendee_k: int
    seed: int
    trials: int

    def __post_init__(self) -> None:
        for name in ("tables", "capacity", "per_attendee_k", "trials"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise InputError(f"config value {name} must be a positive integer, got {value!r}")
        if not isinstance(self.seed, int):
            raise InputError(f"config value seed must be an integer, got {self.seed!r}")


def load_config(path: str | Path, **overrides) -> PipelineConfig:
    """Read a pipeline config JSON file.

    Relative paths in the file (including its output_dir) resolve against
    the config file's directory, so a config travels with its data. An
    output_dir override resolves like any command-line path, against the
    caller's working directory. Overrides with value None are ignored; the
    rest replace the file's values.
    """
    path = Path(path)
    if not path.is_file():
        raise InputError(f"config file not found: {path}")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(raw, dict):
        raise InputError(f"{path}: expected a JSON object")
    unknown = set(raw) - _KNOWN_KEYS
    if unknown:
        raise InputError(f"{path}: unknown config key(s) {sorted(unknown)}")
    for key in ("researchers", "documents", "surveys", "topics"):
        if key not in raw:
            raise InputError(f"{path}: missing required key '{key}'")

    base = path.parent
    overrides = {k: v for k, v in overrides.items() if v is not None}

    def scalar(key: str) -> int:
        if key in overrides:
            return overrides[key]
        return raw.get(key, _SCALAR_DEFAULTS[key])

    if "output_dir" in overrides:
        output_dir = Path(overrides["output_dir"])
    else:
        file_value = Path(raw.get("output_dir", "out"))
        output_dir = file_value if file_value.is_absolute() else base / file_value
    weights_raw = raw.get("weights", {})
    if not isinstance(weights_raw, dict):
        raise InputError(f"{path}: 'weights' must be an object")
    return PipelineConfig(
        researchers_path=base / raw["researchers"],
        documents_path=base / raw["documents"],
        surveys_path=base / raw["surveys"],
        topics_path=base / raw["topics"],
        keywords_path=(base / raw["keywords"]) if raw.get("keywords") else None,
        output_dir=output_dir,
        weights=MatchWeights.from_mapping(weights_raw),
        window=EventWindow(
            rounds=scalar("rounds"),
            rooms=scalar("rooms"),
            round_minutes=scalar("round_minutes"),
        ),
        tables=scalar("tables"),
        capacity=scalar("capacity"),
        per_attendee_k=scalar("per_attendee_k"),
        seed=scalar("seed"),
        trials=scalar("trials"),
    )


class _Stage:
    """Context manager that wraps stage failures with the stage name."""

    def __init__(self, name: str):
        self.name = name

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc is not None and not isinstance(exc, PipelineError):
            raise PipelineError(self.name, exc) from exc
        return False


def run_pipeline(config: PipelineConfig) -> dict:
    """Run every stage and write all artifacts under the output directory.

    Returns the machine-readable run summary (also written as
    run_summary.json). Raises :class:`PipelineError` naming the first stage
    that fails; nothing is left half-written thanks to atomic writes.
    """
    out = config.output_dir
    summary: dict = {}

    with _Stage("load"):
        corpus = load_corpus(config.researchers_path, config.documents_path)
        graph = build_collaboration_graph(corpus)
        summary["researchers"] = len(corpus.researchers)
        summary["documents"] = len(corpus.documents)
        summary["collaboration_edges"] = graph.edge_count()

    with _Stage("index"):
        index = build_index(corpus)
        summary["index_terms"] = len(index.postings)

    if config.keywords_path is not None:
        with _Stage("discovery"):
            spec = load_keyword_spec(config.keywords_path)
            hits = find_experts(index, corpus, spec)
            reports.atomic_write_text(
                out / "experts.csv", reports.expert_hits_csv(hits, corpus.researchers)
            )
            summary["expert_hits"] = len(hits)

    with _Stage("surveys"):
        catalog = load_topic_catalog(config.topics_path)
        load = parse_surveys(config.surveys_path, catalog, corpus)
        surveys = list(load.responses)
        summary["attendees"] = len(surveys)
        summary["duplicate_surveys_replaced"] = load.replaced

    with _Stage("matching"):
        edges = all_matches(surveys, corpus.researchers, graph, config.weights)
        reports.atomic_write_text(out / "matches.csv", reports.matches_csv(edges))
        summary["match_edges"] = len(edges)
        summary["excluded_pairs"] = sum(1 for e in edges if e.excluded_prior_collaboration)
        summary["reciprocal_pairs"] = sum(1 for e in edges if e.reciprocal)

    with _Stage("ranking"):
        ranked = rank_matches(edges, config.per_attendee_k)
        reports.atomic_write_text(
            out / "ranked_matches.csv",
            reports.ranked_matches_csv(ranked, corpus.researchers),
        )

    with _Stage("seating"):
        attendees = sorted(s.researcher_id for s in surveys)
        plan = assign_tables(
            edges, attendees, config.tables, config.capacity, seed=config.seed
        )
        reports.atomic_write_text(
            out / "seating.csv", reports.seating_csv(plan, corpus.researchers)
        )
        figures.seating_chart_png(plan, corpus.researchers, out / "seating_chart.png")
        summary["seating_objective"] = plan.objective

    with _Stage("scheduling"):
        schedule = build_schedule(edges, config.window)
        violations = validate_schedule(schedule, edges, config.window)
        if violations:
            # A violation here is a bug, not bad input.
            raise RuntimeError("schedule failed validation: " + "; ".join(violations))
        reports.atomic_write_text(out / "schedule.csv", reports.schedule_csv(schedule))
        summary["meetings"] = len(schedule.meetings)
        summary["schedule_total_score"] = schedule.total_score

    with _Stage("graph-export"):
        reports.atomic_write_text(
            out / "interest_network.dot",
            reports.export_interest_graph(surveys, edges, corpus.researchers),
        )
        figures.interest_network_png(
            surveys, edges, corpus.researchers, out / "interest_network.png"
        )

    with _Stage("baseline"):
        report = baseline_comparison(edges, config.trials, config.seed)
        totals = random_matching_totals(edges, config.trials, config.seed)
        reports.atomic_write_text(
            out / "baseline.json",
            reports.render_summary_json(
                {
                    "engine_total": report.engine_total,
                    "random_mean": report.random_mean,
                    "random_stddev": report.random_stddev,
                    "ratio": report.ratio,
                    "trials": config.trials,
                    "seed": config.seed,
                }
            ),
        )
        figures.baseline_histogram_png(report, totals, out / "baseline_histogram.png")
        summary["baseline"] = {
            "engine_total": report.engine_total,
            "random_mean": report.random_mean,
            "random_stddev": report.random_stddev,
            "ratio": report.ratio,
        }

    with _Stage("summary"):
        summary["config"] = {
            "seed": config.seed,
            "trials": config.trials,
            "per_attendee_k": config.per_attendee_k,
            "tables": config.tables,
            "capacity": config.capacity,
            "rounds": config.window.rounds,
            "rooms": config.window.rooms,
            "round_minutes": config.window.round_minutes,
        }
        reports.atomic_write_text(
            out / "run_summary.json", reports.render_summary_json(summary)
        )

    return summary
