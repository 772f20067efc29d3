"""Meeting schedules: rounds x rooms of recommended pair meetings.

Cross-institution pairs are scheduled strictly before same-institution ones
regardless of score (a conference may be the only time those two people are
ever co-located); within each class stronger matches go first. The greedy
assignment is matching-driven, not an all-pairs rotation: only positive,
non-excluded matches are booked.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matching import MatchEdge

_SCORE_TOL = 1e-9


@dataclass(frozen=True)
class EventWindow:
    """Capacity of the dedicated meeting block; round_minutes is metadata."""

    rounds: int
    rooms: int
    round_minutes: int = 15

    def __post_init__(self) -> None:
        for name in ("rounds", "rooms", "round_minutes"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")


@dataclass(frozen=True)
class Meeting:
    round: int
    room: int
    a_id: str
    b_id: str
    adjusted_score: float
    cross_institution: bool

    @property
    def pair(self) -> tuple[str, str]:
        return (self.a_id, self.b_id) if self.a_id < self.b_id else (self.b_id, self.a_id)


@dataclass(frozen=True)
class Schedule:
    meetings: tuple[Meeting, ...]
    total_score: float


def candidate_order(edges: list[MatchEdge]) -> list[MatchEdge]:
    """Bookable edges in assignment priority order.

    Non-excluded, positive-score edges: cross-institution first, then score
    descending, then pair id. Duplicate pairs keep their first occurrence.
    """
    eligible = [
        e for e in edges if not e.excluded_prior_collaboration and e.adjusted_score > 0
    ]
    eligible.sort(key=lambda e: (not e.cross_institution, -e.adjusted_score, e.pair))
    seen: set[tuple[str, str]] = set()
    ordered: list[MatchEdge] = []
    for edge in eligible:
        if edge.pair not in seen:
            seen.add(edge.pair)
            ordered.append(edge)
    return ordered


def build_schedule(edges: list[MatchEdge], window: EventWindow) -> Schedule:
    """Greedily book candidates into the earliest round with both attendees
    free and a room available. An empty schedule is valid output."""
    busy: list[set[str]] = [set() for _ in range(window.rounds)]
    rooms_used = [0] * window.rounds
    meetings: list[Meeting] = []
    for edge in candidate_order(edges):
        a, b = edge.pair
        for rnd in range(window.rounds):
            if rooms_used[rnd] >= window.rooms or a in busy[rnd] or b in busy[rnd]:
                continue
            meetings.append(
                Meeting(
                    round=rnd,
                    room=rooms_used[rnd],
                    a_id=a,
                    b_id=b,
                    adjusted_score=edge.adjusted_score,
                    cross_institution=edge.cross_institution,
                )
            )
            busy[rnd].update((a, b))
            rooms_used[rnd] += 1
            break
    meetings.sort(key=lambda m: (m.round, m.room))
    return Schedule(
        meetings=tuple(meetings),
        total_score=sum(m.adjusted_score for m in meetings),
    )


def validate_schedule(
    schedule: Schedule, edges: list[MatchEdge], window: EventWindow
) -> list[str]:
    """Check every schedule invariant; returns violation descriptions.

    An empty list means the schedule is valid. Violations are data, not
    errors: this is the audit surface for hand-edited schedules too.
    """
    violations: list[str] = []
    by_pair = {e.pair: e for e in edges}
    cells: set[tuple[int, int]] = set()
    seen_pairs: set[tuple[str, str]] = set()
    per_round: dict[int, set[str]] = {}
    for meeting in schedule.meetings:
        if not 0 <= meeting.round < window.rounds:
            violations.append(f"meeting round {meeting.round} outside 0..{window.rounds - 1}")
        if not 0 <= meeting.room < window.rooms:
            violations.append(f"meeting room {meeting.room} outside 0..{window.rooms - 1}")
        cell = (meeting.round, meeting.room)
        if cell in cells:
            violations.append(f"round {meeting.round} room {meeting.room} double-booked")
        cells.add(cell)
        attendees = per_round.setdefault(meeting.round, set())
        for rid in (meeting.a_id, meeting.b_id):
            if rid in attendees:
                violations.append(f"attendee {rid} double-booked in round {meeting.round}")
            attendees.add(rid)
        if meeting.pair in seen_pairs:
            violations.append(f"pair {meeting.pair} meets more than once")
        seen_pairs.add(meeting.pair)
        edge = by_pair.get(meeting.pair)
        if edge is None:
            violations.append(f"pair {meeting.pair} has no match edge")
            continue
        if edge.excluded_prior_collaboration:
            violations.append(f"pair {meeting.pair} has a prior collaboration")
        if abs(edge.adjusted_score - meeting.adjusted_score) > _SCORE_TOL:
            violations.append(
                f"pair {meeting.pair} score {meeting.adjusted_score} does not match "
                f"edge score {edge.adjusted_score}"
            )
    expected_total = sum(m.adjusted_score for m in schedule.meetings)
    if abs(schedule.total_score - expected_total) > _SCORE_TOL:
        violations.append(
            f"total_score {schedule.total_score} != sum of meeting scores {expected_total}"
        )
    return violations
