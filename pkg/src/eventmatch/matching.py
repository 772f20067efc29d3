"""Pairwise attendee scoring, ranking, and the better-than-chance baseline.

Match strength is a weighted sum of three signals, weakest to strongest:
topics both attendees marked as strong interests, one-directional
need/provision method matches, and a premium when the need/provision matches
run in both directions (the reciprocal case). Pairs from different
institutions get a flat bonus on top. Prior collaborators are flagged and
hard-excluded from every downstream artifact; their edges carry scores but
never earn credit anywhere.
"""

from __future__ import annotations

import math
import random
import statistics
from dataclasses import dataclass
from typing import Mapping

from .corpus import CollaborationGraph, Researcher, has_prior_collaboration
from .errors import InputError
from .survey import SurveyResponse

_RATIO_EPSILON = 1e-9


@dataclass(frozen=True)
class MatchWeights:
    """Scoring weights; defaults keep interest-only < one-directional < reciprocal."""

    w_interest: float = 1.0
    w_directed: float = 2.0
    w_reciprocal: float = 5.0
    cross_institution_bonus: float = 1.0

    def __post_init__(self) -> None:
        for name in ("w_interest", "w_directed", "w_reciprocal", "cross_institution_bonus"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value) or value < 0:
                raise InputError(f"weight {name} must be finite and >= 0, got {value!r}")

    @classmethod
    def from_mapping(cls, raw: Mapping[str, object]) -> "MatchWeights":
        """Build weights from a config mapping; missing fields take defaults."""
        known = {"w_interest", "w_directed", "w_reciprocal", "cross_institution_bonus"}
        unknown = set(raw) - known
        if unknown:
            raise InputError(f"unknown weight key(s): {sorted(unknown)}")
        values = {}
        for key, value in raw.items():
            try:
                values[key] = float(value)  # type: ignore[arg-type]
            except (TypeError, ValueError):
                raise InputError(f"weight {key} must be a number, got {value!r}") from None
        return cls(**values)


@dataclass(frozen=True)
class MatchEdge:
    """A scored, classified pair of attendees.

    ``directed_ab`` holds methods the first attendee needs and the second
    offers; ``directed_ba`` the reverse. Scores are symmetric in the pair.
    """

    a_id: str
    b_id: str
    shared_strong_interests: frozenset[str]
    directed_ab: frozenset[str]
    directed_ba: frozenset[str]
    reciprocal: bool
    excluded_prior_collaboration: bool
    cross_institution: bool
    base_score: float
    adjusted_score: float

    @property
    def pair(self) -> tuple[str, str]:
        return (self.a_id, self.b_id) if self.a_id < self.b_id else (self.b_id, self.a_id)

    def other(self, rid: str) -> str:
        return self.b_id if rid == self.a_id else self.a_id


def score_pair(
    a: SurveyResponse,
    b: SurveyResponse,
    researchers: Mapping[str, Researcher],
    graph: CollaborationGraph,
    weights: MatchWeights = MatchWeights(),
) -> MatchEdge:
    """Score one unordered pair of survey responses.

    Shared interests count only when both sides marked the topic strong; a
    strong-mild overlap earns nothing. Reordering the arguments swaps the
    directed sets and changes no score.
    """
    if a.researcher_id == b.researcher_id:
        raise InputError(f"cannot match researcher {a.researcher_id!r} with themself")
    shared_strong = a.strong_interests() & b.strong_interests()
    directed_ab = a.methods_needed & b.methods_offered
    directed_ba = b.methods_needed & a.methods_offered
    reciprocal = bool(directed_ab) and bool(directed_ba)
    base = (
        weights.w_interest * len(shared_strong)
        + weights.w_directed * (len(directed_ab) + len(directed_ba))
        + weights.w_reciprocal * (1 if reciprocal else 0)
    )
    inst_a = researchers[a.researcher_id].institution
    inst_b = researchers[b.researcher_id].institution
    cross = inst_a != inst_b
    adjusted = base + (weights.cross_institution_bonus if cross else 0.0)
    return MatchEdge(
        a_id=a.researcher_id,
        b_id=b.researcher_id,
        shared_strong_interests=frozenset(shared_strong),
        directed_ab=frozenset(directed_ab),
        directed_ba=frozenset(directed_ba),
        reciprocal=reciprocal,
        excluded_prior_collaboration=has_prior_collaboration(
            graph, a.researcher_id, b.researcher_id
        ),
        cross_institution=cross,
        base_score=base,
        adjusted_score=adjusted,
    )


def all_matches(
    surveys: list[SurveyResponse] | tuple[SurveyResponse, ...],
    researchers: Mapping[str, Researcher],
    graph: CollaborationGraph,
    weights: MatchWeights = MatchWeights(),
) -> list[MatchEdge]:
    """Score every unordered pair of respondents, ordered by pair ids."""
    if len(surveys) < 2:
        raise InputError(f"need at least 2 survey responses, got {len(surveys)}")
    by_id = {s.researcher_id: s for s in surveys}
    if len(by_id) != len(surveys):
        raise InputError("duplicate researcher ids among survey responses")
    ids = sorted(by_id)
    edges: list[MatchEdge] = []
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            edges.append(score_pair(by_id[a], by_id[b], researchers, graph, weights))
    return edges


def rank_matches(
    edges: list[MatchEdge], per_attendee_k: int, include_excluded: bool = False
) -> dict[str, list[MatchEdge]]:
    """Top-k match list per attendee.

    Prior collaborators are ruled out unless ``include_excluded``; zero-score
    edges never rank. Sort order: adjusted score, then base score, then pair
    id. Every attendee appearing in the input gets a key, possibly empty.
    """
    if per_attendee_k < 1:
        raise ValueError(f"per_attendee_k must be >= 1, got {per_attendee_k}")
    attendees = sorted({rid for e in edges for rid in (e.a_id, e.b_id)})
    eligible = [
        e
        for e in edges
        if e.adjusted_score > 0
        and (include_excluded or not e.excluded_prior_collaboration)
    ]
    ranked: dict[str, list[MatchEdge]] = {rid: [] for rid in attendees}
    for rid in attendees:
        mine = [e for e in eligible if rid in (e.a_id, e.b_id)]
        mine.sort(key=lambda e: (-e.adjusted_score, -e.base_score, e.pair))
        ranked[rid] = mine[:per_attendee_k]
    return ranked


@dataclass(frozen=True)
class BaselineReport:
    engine_total: float
    random_mean: float
    random_stddev: float
    ratio: float


def greedy_matching_total(edges: list[MatchEdge]) -> float:
    """Total adjusted score of a greedy maximum-weight matching.

    Non-excluded edges are taken in score order (pair id breaks ties) while
    both endpoints are unmatched. Greedy rather than optimal on purpose: the
    comparison target is random chance, not optimality.
    """
    free = {rid for e in edges for rid in (e.a_id, e.b_id)}
    total = 0.0
    for edge in sorted(
        (e for e in edges if not e.excluded_prior_collaboration),
        key=lambda e: (-e.adjusted_score, e.pair),
    ):
        a, b = edge.pair
        if a in free and b in free:
            free.discard(a)
            free.discard(b)
            total += edge.adjusted_score
    return total


def random_matching_totals(
    edges: list[MatchEdge], trials: int, seed: int
) -> list[float]:
    """Adjusted-score totals of uniformly random pairings, one per trial.

    Each trial shuffles the attendee list and pairs consecutive entries; with
    an odd count the final attendee sits out. Pairs with a prior
    collaboration contribute zero, mirroring the credit rule applied to
    every other artifact.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    attendees = sorted({rid for e in edges for rid in (e.a_id, e.b_id)})
    value: dict[tuple[str, str], float] = {
        e.pair: (0.0 if e.excluded_prior_collaboration else e.adjusted_score)
        for e in edges
    }
    rng = random.Random(seed)
    totals: list[float] = []
    order = list(attendees)
    for _ in range(trials):
        rng.shuffle(order)
        total = 0.0
        for i in range(0, len(order) - 1, 2):
            a, b = order[i], order[i + 1]
            key = (a, b) if a < b else (b, a)
            total += value.get(key, 0.0)
        totals.append(total)
    return totals


def baseline_comparison(
    edges: list[MatchEdge], trials: int, seed: int
) -> BaselineReport:
    """Compare the engine's greedy matching against uniformly random pairing.

    Deterministic for a fixed seed. The stddev is the population standard
    deviation over the trials.
    """
    attendees = {rid for e in edges for rid in (e.a_id, e.b_id)}
    if len(attendees) < 4:
        raise InputError(f"baseline needs at least 4 attendees, got {len(attendees)}")
    engine_total = greedy_matching_total(edges)
    totals = random_matching_totals(edges, trials, seed)
    mean = sum(totals) / len(totals)
    stddev = statistics.pstdev(totals)
    return BaselineReport(
        engine_total=engine_total,
        random_mean=mean,
        random_stddev=stddev,
        ratio=engine_total / max(mean, _RATIO_EPSILON),
    )
