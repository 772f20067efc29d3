"""Table assignment: put strong matches at the same tables.

Two phases: a greedy construction that walks edges from strongest down and
tries to co-seat their endpoints, then a best-improvement local search over
single moves and pairwise swaps. Because move+swap search can stall in a
local optimum, the search is restarted a few times from seeded random
perturbations of the best plan found, keeping the best result (iterated
local search). The objective is the summed adjusted score of non-excluded
pairs sharing a table; excluded pairs may share a table but earn nothing.
The seed drives only construction tie-breaks and the perturbations; given
identical inputs and seed the result is deterministic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InputError
from .matching import MatchEdge

_IMPROVEMENT_EPS = 1e-9


@dataclass(frozen=True)
class SeatingPlan:
    tables: tuple[frozenset[str], ...]
    capacity: int
    objective: float


def pair_score_map(edges: list[MatchEdge]) -> dict[tuple[str, str], float]:
    """Pair -> creditable score; prior collaborators credit zero."""
    return {
        e.pair: (0.0 if e.excluded_prior_collaboration else e.adjusted_score)
        for e in edges
    }


def seating_objective(
    tables: list[set[str]] | tuple[frozenset[str], ...],
    scores: dict[tuple[str, str], float],
) -> float:
    total = 0.0
    for table in tables:
        members = sorted(table)
        for i, a in enumerate(members):
            for b in members[i + 1 :]:
                total += scores.get((a, b), 0.0)
    return total


def greedy_seating(
    edges: list[MatchEdge],
    attendees: list[str],
    table_count: int,
    capacity: int,
    seed: int,
) -> list[set[str]]:
    """Construction phase: co-seat endpoints of strong edges, then fill
    the leftovers round-robin."""
    scores = pair_score_map(edges)
    attendee_set = set(attendees)
    candidates = [
        e
        for e in edges
        if not e.excluded_prior_collaboration
        and e.adjusted_score > 0
        and e.a_id in attendee_set
        and e.b_id in attendee_set
    ]
    candidates.sort(key=lambda e: (-e.adjusted_score, e.pair))

    tables: list[set[str]] = [set() for _ in range(table_count)]
    seat_of: dict[str, int] = {}
    rng = random.Random(seed)

    def gain(person: str, table: set[str]) -> float:
        return sum(
            scores.get((person, y) if person < y else (y, person), 0.0) for y in table
        )

    def best_table(person: str, min_free: int = 1) -> int | None:
        options: list[tuple[float, int]] = []
        for idx, table in enumerate(tables):
            if capacity - len(table) >= min_free:
                options.append((gain(person, table), idx))
        if not options:
            return None
        top = max(g for g, _ in options)
        tied = [idx for g, idx in options if g == top]
        return tied[0] if len(tied) == 1 else tied[rng.randrange(len(tied))]

    def seat(person: str, idx: int) -> None:
        tables[idx].add(person)
        seat_of[person] = idx

    for edge in candidates:
        a, b = edge.pair
        seated_a, seated_b = a in seat_of, b in seat_of
        if seated_a and seated_b:
            continue
        if not seated_a and not seated_b:
            # Prefer a table that takes both; score the pair edge plus both
            # members' affinity with the current occupants.
            options: list[tuple[float, int]] = []
            for idx, table in enumerate(tables):
                if capacity - len(table) >= 2:
                    options.append((edge.adjusted_score + gain(a, table) + gain(b, table), idx))
            if options:
                top = max(g for g, _ in options)
                tied = [idx for g, idx in options if g == top]
                idx = tied[0] if len(tied) == 1 else tied[rng.randrange(len(tied))]
                seat(a, idx)
                seat(b, idx)
                continue
            for person in (a, b):
                idx = best_table(person)
                if idx is not None:
                    seat(person, idx)
            continue
        person = b if seated_a else a
        idx = best_table(person)
        if idx is not None:
            seat(person, idx)

    cursor = 0
    for person in attendees:
        if person in seat_of:
            continue
        for _ in range(table_count):
            if len(tables[cursor % table_count]) < capacity:
                break
            cursor += 1
        seat(person, cursor % table_count)
        cursor += 1
    return tables


def improve_seating(
    tables: list[set[str]],
    scores: dict[tuple[str, str], float],
    capacity: int,
    max_iters: int,
) -> list[set[str]]:
    """Best-improvement local search over single moves and pairwise swaps.

    Each accepted step strictly increases the objective, so the loop
    terminates at a local optimum (or after max_iters steps).
    """

    def affinity(person: str, table: set[str]) -> float:
        return sum(
            scores.get((person, y) if person < y else (y, person), 0.0)
            for y in table
            if y != person
        )

    for _ in range(max_iters):
        best_delta = 0.0
        best_action: tuple | None = None
        for src_idx, src in enumerate(tables):
            for person in sorted(src):
                base = affinity(person, src)
                for dst_idx, dst in enumerate(tables):
                    if dst_idx == src_idx or len(dst) >= capacity:
                        continue
                    delta = affinity(person, dst) - base
                    if delta > best_delta + _IMPROVEMENT_EPS:
                        best_delta = delta
                        best_action = ("move", person, src_idx, dst_idx)
        for src_idx, src in enumerate(tables):
            for dst_idx in range(src_idx + 1, len(tables)):
                dst = tables[dst_idx]
                for a in sorted(src):
                    a_home = affinity(a, src)
                    for b in sorted(dst):
                        pair_score = scores.get((a, b) if a < b else (b, a), 0.0)
                        delta = (
                            (affinity(a, dst) - pair_score)
                            + (affinity(b, src) - pair_score)
                            - a_home
                            - affinity(b, dst)
                        )
                        if delta > best_delta + _IMPROVEMENT_EPS:
                            best_delta = delta
                            best_action = ("swap", a, src_idx, b, dst_idx)
        if best_action is None:
            break
        if best_action[0] == "move":
            _, person, src_idx, dst_idx = best_action
            tables[src_idx].discard(person)
            tables[dst_idx].add(person)
        else:
            _, a, src_idx, b, dst_idx = best_action
            tables[src_idx].discard(a)
            tables[dst_idx].discard(b)
            tables[src_idx].add(b)
            tables[dst_idx].add(a)
    return tables


def _perturb(
    tables: list[set[str]], capacity: int, rng: random.Random, steps: int = 3
) -> list[set[str]]:
    """Apply a few random swaps/moves; keeps the partition valid."""
    tables = [set(t) for t in tables]
    occupied = [i for i, t in enumerate(tables) if t]
    if len(tables) < 2 or len(occupied) < 2:
        return tables
    for _ in range(steps):
        open_tables = [i for i, t in enumerate(tables) if len(t) < capacity]
        occupied = [i for i, t in enumerate(tables) if t]
        can_swap = len(occupied) >= 2
        can_move = any(i != j for i in occupied for j in open_tables)
        if not can_swap and not can_move:
            break
        if can_move and (not can_swap or rng.random() < 0.3):
            src = rng.choice([i for i in occupied if any(j != i for j in open_tables)])
            dst = rng.choice([j for j in open_tables if j != src])
            person = rng.choice(sorted(tables[src]))
            tables[src].discard(person)
            tables[dst].add(person)
        else:
            src, dst = rng.sample(occupied, 2)
            a = rng.choice(sorted(tables[src]))
            b = rng.choice(sorted(tables[dst]))
            tables[src].discard(a)
            tables[dst].discard(b)
            tables[src].add(b)
            tables[dst].add(a)
    return tables


def assign_tables(
    edges: list[MatchEdge],
    attendees: list[str],
    table_count: int,
    capacity: int,
    seed: int,
    max_iters: int = 10000,
    restarts: int = 8,
) -> SeatingPlan:
    """Partition attendees into tables maximizing co-seated match score."""
    if table_count < 1:
        raise ValueError(f"table_count must be >= 1, got {table_count}")
    if capacity < 2:
        raise ValueError(f"capacity must be >= 2, got {capacity}")
    if len(set(attendees)) != len(attendees):
        raise InputError("duplicate attendee ids")
    if table_count * capacity < len(attendees):
        raise InputError(
            f"{len(attendees)} attendees do not fit {table_count} tables "
            f"of {capacity}"
        )
    scores = pair_score_map(edges)
    tables = greedy_seating(edges, attendees, table_count, capacity, seed)
    tables = improve_seating(tables, scores, capacity, max_iters)
    best = tables
    best_objective = seating_objective(best, scores)
    # derived integer seed: str/tuple seeds would pick up per-process hash
    # randomization and break cross-run determinism
    rng = random.Random(seed * 1_000_003 + 7)
    for _ in range(restarts if table_count > 1 else 0):
        candidate = _perturb(best, capacity, rng)
        candidate = improve_seating(candidate, scores, capacity, max_iters)
        objective = seating_objective(candidate, scores)
        if objective > best_objective + _IMPROVEMENT_EPS:
            best, best_objective = candidate, objective
    return SeatingPlan(
        tables=tuple(frozenset(t) for t in best),
        capacity=capacity,
        objective=best_objective,
    )
