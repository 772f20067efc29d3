"""Command-line interface.

Subcommands mirror the pipeline stages so organizers can iterate on one
stage at a time: tighten keywords with `discover`, sanity-check data with
`ingest`, then `run-all` once everything looks right. Exit codes: 0 success,
1 input/validation error, 2 internal error.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from . import figures, reports
from .corpus import build_collaboration_graph, load_corpus
from .discovery import build_index, expand_keywords, find_experts, load_keyword_spec
from .errors import InputError, PipelineError
from .matching import all_matches, baseline_comparison, random_matching_totals, rank_matches
from .pipeline import PipelineConfig, load_config, run_pipeline
from .scheduling import build_schedule
from .seating import assign_tables
from .survey import load_topic_catalog, parse_surveys

_INPUT_ERRORS = (InputError, ValueError, OSError)


def _fail(exc: BaseException) -> None:
    click.echo(f"error: {exc}", err=True)
    if isinstance(exc, PipelineError):
        exc = exc.cause
    sys.exit(1 if isinstance(exc, _INPUT_ERRORS) else 2)


def _config_options(fn):
    fn = click.option("--capacity", type=int, default=None, help="Seats per table.")(fn)
    fn = click.option("--tables", type=int, default=None, help="Number of tables.")(fn)
    fn = click.option("--rooms", type=int, default=None, help="Meeting rooms per round.")(fn)
    fn = click.option("--rounds", type=int, default=None, help="Meeting rounds.")(fn)
    fn = click.option("--k", type=int, default=None, help="Matches kept per attendee.")(fn)
    fn = click.option("--trials", type=int, default=None, help="Random-baseline trials.")(fn)
    fn = click.option("--seed", type=int, default=None, help="Seed for tie-breaks and trials.")(fn)
    fn = click.option(
        "--outdir",
        "-o",
        type=click.Path(path_type=Path),
        default=None,
        help="Output directory (defaults to the config's output_dir).",
    )(fn)
    fn = click.option(
        "--config",
        "-c",
        "config_path",
        type=click.Path(path_type=Path),
        required=True,
        help="Pipeline config JSON.",
    )(fn)
    return fn


def _load(config_path: Path, outdir, seed, trials, k, rounds, rooms, tables, capacity) -> PipelineConfig:
    return load_config(
        config_path,
        output_dir=outdir,
        seed=seed,
        trials=trials,
        per_attendee_k=k,
        rounds=rounds,
        rooms=rooms,
        tables=tables,
        capacity=capacity,
    )


def _ingest(config: PipelineConfig):
    corpus = load_corpus(config.researchers_path, config.documents_path)
    graph = build_collaboration_graph(corpus)
    catalog = load_topic_catalog(config.topics_path)
    load = parse_surveys(config.surveys_path, catalog, corpus)
    return corpus, graph, list(load.responses), load.replaced


@click.group()
@click.version_option(package_name="eventmatch")
def main() -> None:
    """Matchmaking toolkit for research networking events."""


@main.command()
@_config_options
def ingest(config_path, outdir, seed, trials, k, rounds, rooms, tables, capacity) -> None:
    """Validate all inputs and print counts."""
    try:
        config = _load(config_path, outdir, seed, trials, k, rounds, rooms, tables, capacity)
        corpus, graph, surveys, replaced = _ingest(config)
    except Exception as exc:
        _fail(exc)
    click.echo(f"researchers: {len(corpus.researchers)}")
    click.echo(f"documents: {len(corpus.documents)}")
    click.echo(f"collaboration edges: {graph.edge_count()}")
    click.echo(f"survey responses: {len(surveys)}")
    if replaced:
        click.echo(f"warning: {replaced} duplicate survey row(s) replaced", err=True)


@main.command()
@click.option("--expand", "expand_k", type=int, default=None, help="Also write the top K co-occurring candidate terms.")
@_config_options
def discover(config_path, outdir, seed, trials, k, rounds, rooms, tables, capacity, expand_k) -> None:
    """Rank subject-matter experts for the configured keyword spec."""
    try:
        config = _load(config_path, outdir, seed, trials, k, rounds, rooms, tables, capacity)
        if config.keywords_path is None:
            raise InputError("no keyword spec configured (set 'keywords' in the config)")
        corpus = load_corpus(config.researchers_path, config.documents_path)
        index = build_index(corpus)
        spec = load_keyword_spec(config.keywords_path)
        hits = find_experts(index, corpus, spec)
        out = reports.atomic_write_text(
            config.output_dir / "experts.csv",
            reports.expert_hits_csv(hits, corpus.researchers),
        )
        click.echo(f"wrote {out} ({len(hits)} experts)")
        if expand_k is not None:
            candidates = expand_keywords(index, spec, expand_k)
            out = reports.atomic_write_text(
                config.output_dir / "expanded_terms.csv",
                reports.expanded_terms_csv(candidates),
            )
            click.echo(f"wrote {out} ({len(candidates)} candidate terms)")
    except Exception as exc:
        _fail(exc)


@main.command()
@_config_options
def match(config_path, outdir, seed, trials, k, rounds, rooms, tables, capacity) -> None:
    """Score all attendee pairs and write match + per-attendee rank reports."""
    try:
        config = _load(config_path, outdir, seed, trials, k, rounds, rooms, tables, capacity)
        corpus, graph, surveys, _ = _ingest(config)
        edges = all_matches(surveys, corpus.researchers, graph, config.weights)
        out = reports.atomic_write_text(
            config.output_dir / "matches.csv", reports.matches_csv(edges)
        )
        click.echo(f"wrote {out} ({len(edges)} pairs)")
        ranked = rank_matches(edges, config.per_attendee_k)
        out = reports.atomic_write_text(
            config.output_dir / "ranked_matches.csv",
            reports.ranked_matches_csv(ranked, corpus.researchers),
        )
        click.echo(f"wrote {out}")
    except Exception as exc:
        _fail(exc)


@main.command()
@_config_options
def seat(config_path, outdir, seed, trials, k, rounds, rooms, tables, capacity) -> None:
    """Assign attendees to tables and render the seating chart."""
    try:
        config = _load(config_path, outdir, seed, trials, k, rounds, rooms, tables, capacity)
        corpus, graph, surveys, _ = _ingest(config)
        edges = all_matches(surveys, corpus.researchers, graph, config.weights)
        attendees = sorted(s.researcher_id for s in surveys)
        plan = assign_tables(edges, attendees, config.tables, config.capacity, seed=config.seed)
        out = reports.atomic_write_text(
            config.output_dir / "seating.csv",
            reports.seating_csv(plan, corpus.researchers),
        )
        click.echo(f"wrote {out} (objective {reports.fmt_num(plan.objective)})")
        png = figures.seating_chart_png(
            plan, corpus.researchers, config.output_dir / "seating_chart.png"
        )
        click.echo(f"wrote {png}")
    except Exception as exc:
        _fail(exc)


@main.command()
@_config_options
def schedule(config_path, outdir, seed, trials, k, rounds, rooms, tables, capacity) -> None:
    """Book pair meetings into the rounds-by-rooms event window."""
    try:
        config = _load(config_path, outdir, seed, trials, k, rounds, rooms, tables, capacity)
        corpus, graph, surveys, _ = _ingest(config)
        edges = all_matches(surveys, corpus.researchers, graph, config.weights)
        sched = build_schedule(edges, config.window)
        out = reports.atomic_write_text(
            config.output_dir / "schedule.csv", reports.schedule_csv(sched)
        )
        click.echo(f"wrote {out} ({len(sched.meetings)} meetings)")
    except Exception as exc:
        _fail(exc)


@main.command("export-graph")
@_config_options
def export_graph(config_path, outdir, seed, trials, k, rounds, rooms, tables, capacity) -> None:
    """Export the shared-interest network as DOT plus a rendered diagram."""
    try:
        config = _load(config_path, outdir, seed, trials, k, rounds, rooms, tables, capacity)
        corpus, graph, surveys, _ = _ingest(config)
        edges = all_matches(surveys, corpus.researchers, graph, config.weights)
        out = reports.atomic_write_text(
            config.output_dir / "interest_network.dot",
            reports.export_interest_graph(surveys, edges, corpus.researchers),
        )
        click.echo(f"wrote {out}")
        png = figures.interest_network_png(
            surveys, edges, corpus.researchers, config.output_dir / "interest_network.png"
        )
        click.echo(f"wrote {png}")
    except Exception as exc:
        _fail(exc)


@main.command()
@_config_options
def baseline(config_path, outdir, seed, trials, k, rounds, rooms, tables, capacity) -> None:
    """Compare the engine's pairing against seeded random pairings."""
    try:
        config = _load(config_path, outdir, seed, trials, k, rounds, rooms, tables, capacity)
        corpus, graph, surveys, _ = _ingest(config)
        edges = all_matches(surveys, corpus.researchers, graph, config.weights)
        report = baseline_comparison(edges, config.trials, config.seed)
        out = reports.atomic_write_text(
            config.output_dir / "baseline.json",
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
        click.echo(f"wrote {out} (ratio {report.ratio:.3f})")
        totals = random_matching_totals(edges, config.trials, config.seed)
        png = figures.baseline_histogram_png(
            report, totals, config.output_dir / "baseline_histogram.png"
        )
        click.echo(f"wrote {png}")
    except Exception as exc:
        _fail(exc)


@main.command("run-all")
@_config_options
def run_all(config_path, outdir, seed, trials, k, rounds, rooms, tables, capacity) -> None:
    """Run the whole pipeline and write every artifact."""
    try:
        config = _load(config_path, outdir, seed, trials, k, rounds, rooms, tables, capacity)
        summary = run_pipeline(config)
    except Exception as exc:
        _fail(exc)
    click.echo(f"wrote {config.output_dir / 'run_summary.json'}")
    click.echo(
        f"attendees={summary['attendees']} edges={summary['match_edges']} "
        f"seating_objective={reports.fmt_num(summary['seating_objective'])} "
        f"meetings={summary['meetings']} baseline_ratio={summary['baseline']['ratio']:.3f}"
    )


if __name__ == "__main__":
    main()
