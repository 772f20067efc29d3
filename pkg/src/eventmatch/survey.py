"""Event survey ingestion: interests, methods offered, methods needed.

Interest topics are restricted to a pre-identified catalog; methods are free
text. Everything is stored in normalized form so that downstream set
intersections compare like with like.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .corpus import Corpus
from .errors import InputError
from .textnorm import normalize_and_stem

SURVEY_FIELDS = ["researcher_id", "interests", "methods_offered", "methods_needed"]


class Strength(str, Enum):
    STRONG = "strong"
    MILD = "mild"


@dataclass(frozen=True)
class SurveyResponse:
    """One attendee's answers, with all strings in normalized form.

    A method may appear in both offered and needed sets: someone can share
    working knowledge of a method while wanting deeper expertise in it.
    """

    researcher_id: str
    interests: dict[str, Strength]
    methods_offered: frozenset[str]
    methods_needed: frozenset[str]

    def strong_interests(self) -> frozenset[str]:
        return frozenset(t for t, s in self.interests.items() if s is Strength.STRONG)


@dataclass(frozen=True)
class TopicCatalog:
    topics: frozenset[str]

    def __post_init__(self) -> None:
        if not self.topics:
            raise InputError("topic catalog is empty")


@dataclass(frozen=True)
class SurveyLoad:
    """Parsed responses plus the number of duplicate rows that were replaced."""

    responses: tuple[SurveyResponse, ...]
    replaced: int


def load_topic_catalog(path: str | Path) -> TopicCatalog:
    """Read a catalog file: one topic per line, '#' comments ignored."""
    path = Path(path)
    if not path.is_file():
        raise InputError(f"topic catalog file not found: {path}")
    topics: set[str] = set()
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            topics.add(normalize_and_stem(line))
    return TopicCatalog(topics=frozenset(topics))


def parse_surveys(
    path: str | Path, catalog: TopicCatalog, corpus: Corpus
) -> SurveyLoad:
    """Parse the survey CSV into one response per researcher.

    A researcher submitting twice keeps the later row (survey tools resubmit
    on edit); each replacement is counted and surfaced in ``replaced``.
    Unknown researcher ids, topics outside the catalog, and malformed
    strength values reject the load.
    """
    path = Path(path)
    if not path.is_file():
        raise InputError(f"surveys file not found: {path}")
    responses: dict[str, SurveyResponse] = {}
    replaced = 0
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames != SURVEY_FIELDS:
            raise InputError(
                f"{path}: expected header {','.join(SURVEY_FIELDS)!r}, "
                f"got {reader.fieldnames}"
            )
        for row in reader:
            line = reader.line_num
            if any(v is None for v in row.values()) or None in row:
                raise InputError(f"{path} line {line}: wrong number of fields")
            rid = row["researcher_id"].strip()
            if rid not in corpus.researchers:
                raise InputError(f"{path} line {line}: unknown researcher id {rid!r}")
            interests = _parse_interests(row["interests"], catalog, path, line)
            offered = _parse_methods(row["methods_offered"])
            needed = _parse_methods(row["methods_needed"])
            if rid in responses:
                replaced += 1
            responses[rid] = SurveyResponse(
                researcher_id=rid,
                interests=interests,
                methods_offered=offered,
                methods_needed=needed,
            )
    return SurveyLoad(responses=tuple(responses.values()), replaced=replaced)


def _parse_interests(
    cell: str, catalog: TopicCatalog, path: Path, line: int
) -> dict[str, Strength]:
    interests: dict[str, Strength] = {}
    for part in _split_cell(cell):
        topic, sep, strength_raw = part.rpartition(":")
        if not sep or not topic.strip():
            raise InputError(
                f"{path} line {line}: interest {part!r} is not 'topic:strength'"
            )
        try:
            strength = Strength(strength_raw.strip().lower())
        except ValueError:
            raise InputError(
                f"{path} line {line}: invalid interest strength {strength_raw!r} "
                "(expected 'strong' or 'mild')"
            ) from None
        norm = normalize_and_stem(topic)
        if norm not in catalog.topics:
            raise InputError(f"{path} line {line}: topic not in catalog: {norm}")
        if norm in interests:
            raise InputError(
                f"{path} line {line}: duplicate interest topic after "
                f"normalization: {norm}"
            )
        interests[norm] = strength
    return interests


def _parse_methods(cell: str) -> frozenset[str]:
    return frozenset(normalize_and_stem(part) for part in _split_cell(cell))


def _split_cell(cell: str) -> list[str]:
    return [part.strip() for part in cell.split(";") if part.strip()]


def render_surveys_csv(responses: tuple[SurveyResponse, ...] | list[SurveyResponse]) -> str:
    """Serialize responses back to the survey CSV format (round-trippable)."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SURVEY_FIELDS)
    for resp in responses:
        interests = ";".join(
            f"{topic}:{strength.value}" for topic, strength in sorted(resp.interests.items())
        )
        writer.writerow(
            [
                resp.researcher_id,
                interests,
                ";".join(sorted(resp.methods_offered)),
                ";".join(sorted(resp.methods_needed)),
            ]
        )
    return buffer.getvalue()
