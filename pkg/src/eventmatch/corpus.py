"""Researchers, their documents, and the collaboration graph derived from them.

The collaboration graph is what lets the matcher rule out pairs who have
already worked together, so ingestion is deliberately fail-fast: a dangling
author id or a duplicate researcher rejects the whole load rather than
silently dropping an edge.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from pathlib import Path

from .errors import InputError

RESEARCHER_FIELDS = ["id", "name", "institution", "department"]
DOCUMENT_KEYS = {"id", "kind", "title", "abstract", "authors"}


class DocumentKind(str, Enum):
    PUBLICATION = "publication"
    SPONSORED_PROJECT = "sponsored_project"


@dataclass(frozen=True)
class Researcher:
    id: str
    name: str
    institution: str
    department: str | None = None


@dataclass(frozen=True)
class Document:
    """A text-bearing output linking researchers to terms and to each other.

    Publications and sponsored projects share this type; both count equally
    as collaboration evidence. Author order is preserved but never scored.
    """

    id: str
    kind: DocumentKind
    title: str
    abstract: str
    author_ids: tuple[str, ...]


@dataclass(frozen=True)
class Corpus:
    researchers: dict[str, Researcher]
    documents: tuple[Document, ...]

    def researcher(self, rid: str) -> Researcher:
        try:
            return self.researchers[rid]
        except KeyError:
            raise InputError(f"unknown researcher id {rid!r}") from None


@dataclass(frozen=True)
class CollaborationGraph:
    """Unordered researcher pairs with the documents that connect them.

    ``provenance`` maps each sorted id pair to the ids of every document
    listing both researchers as authors.
    """

    researcher_ids: frozenset[str]
    provenance: dict[tuple[str, str], tuple[str, ...]]

    @property
    def adjacency(self) -> set[tuple[str, str]]:
        return set(self.provenance)

    def edge_count(self) -> int:
        return len(self.provenance)


def load_corpus(researchers_path: str | Path, documents_path: str | Path) -> Corpus:
    """Load researchers (CSV) and documents (JSON Lines) into a corpus.

    Any malformed row or record, duplicate id, or author id that does not
    resolve to a loaded researcher rejects the whole load with an
    :class:`InputError` naming the file and offending record.
    """
    researchers = _load_researchers(Path(researchers_path))
    documents = _load_documents(Path(documents_path), researchers)
    return Corpus(researchers=researchers, documents=documents)


def _load_researchers(path: Path) -> dict[str, Researcher]:
    if not path.is_file():
        raise InputError(f"researchers file not found: {path}")
    researchers: dict[str, Researcher] = {}
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames != RESEARCHER_FIELDS:
            raise InputError(
                f"{path}: expected header {','.join(RESEARCHER_FIELDS)!r}, "
                f"got {reader.fieldnames}"
            )
        for row in reader:
            line = reader.line_num
            if any(v is None for v in row.values()) or None in row:
                raise InputError(f"{path} line {line}: wrong number of fields")
            rid = row["id"].strip()
            if not rid:
                raise InputError(f"{path} line {line}: field 'id' is empty")
            if rid in researchers:
                raise InputError(f"{path} line {line}: duplicate researcher id {rid!r}")
            institution = row["institution"].strip()
            if not institution:
                raise InputError(
                    f"{path} line {line}: field 'institution' is empty for {rid!r}"
                )
            name = row["name"].strip()
            if not name:
                raise InputError(f"{path} line {line}: field 'name' is empty for {rid!r}")
            department = row["department"].strip() or None
            researchers[rid] = Researcher(
                id=rid, name=name, institution=institution, department=department
            )
    if not researchers:
        raise InputError(f"{path}: no researchers loaded")
    return researchers


def _load_documents(path: Path, researchers: dict[str, Researcher]) -> tuple[Document, ...]:
    if not path.is_file():
        raise InputError(f"documents file not found: {path}")
    documents: list[Document] = []
    seen: set[str] = set()
    with path.open(encoding="utf-8") as handle:
        for index, raw in enumerate(handle, start=1):
            raw = raw.strip()
            if not raw:
                continue
            try:
                record = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise InputError(f"{path} record {index}: invalid JSON ({exc})") from None
            if not isinstance(record, dict):
                raise InputError(f"{path} record {index}: expected a JSON object")
            missing = DOCUMENT_KEYS - record.keys()
            if missing:
                raise InputError(
                    f"{path} record {index}: missing field(s) {sorted(missing)}"
                )
            doc_id = record["id"]
            if not isinstance(doc_id, str) or not doc_id:
                raise InputError(f"{path} record {index}: field 'id' must be a non-empty string")
            if doc_id in seen:
                raise InputError(f"{path} record {index}: duplicate document id {doc_id!r}")
            try:
                kind = DocumentKind(record["kind"])
            except ValueError:
                raise InputError(
                    f"{path} record {index}: field 'kind' must be 'publication' or "
                    f"'sponsored_project', got {record['kind']!r}"
                ) from None
            title = record["title"]
            abstract = record["abstract"]
            if not isinstance(title, str) or not isinstance(abstract, str):
                raise InputError(
                    f"{path} record {index}: fields 'title' and 'abstract' must be strings"
                )
            authors = record["authors"]
            if (
                not isinstance(authors, list)
                or not authors
                or not all(isinstance(a, str) for a in authors)
            ):
                raise InputError(
                    f"{path} record {index}: field 'authors' must be a non-empty "
                    "array of id strings"
                )
            if len(set(authors)) != len(authors):
                raise InputError(
                    f"{path} record {index}: duplicate author ids in document {doc_id!r}"
                )
            for author in authors:
                if author not in researchers:
                    raise InputError(f"unknown author {author} in document {doc_id}")
            seen.add(doc_id)
            documents.append(
                Document(
                    id=doc_id,
                    kind=kind,
                    title=title,
                    abstract=abstract,
                    author_ids=tuple(authors),
                )
            )
    return tuple(documents)


def build_collaboration_graph(corpus: Corpus) -> CollaborationGraph:
    """Connect every pair of researchers who share a document of either kind."""
    provenance: dict[tuple[str, str], list[str]] = {}
    for doc in corpus.documents:
        for a, b in combinations(sorted(set(doc.author_ids)), 2):
            provenance.setdefault((a, b), []).append(doc.id)
    return CollaborationGraph(
        researcher_ids=frozenset(corpus.researchers),
        provenance={pair: tuple(docs) for pair, docs in sorted(provenance.items())},
    )


def has_prior_collaboration(graph: CollaborationGraph, a: str, b: str) -> bool:
    """True iff the two researchers co-authored any loaded document."""
    if a == b:
        raise InputError(f"cannot check a researcher against themself: {a!r}")
    for rid in (a, b):
        if rid not in graph.researcher_ids:
            raise InputError(f"unknown researcher id {rid!r}")
    key = (a, b) if a < b else (b, a)
    return key in graph.provenance
