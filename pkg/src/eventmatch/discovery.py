"""Keyword-driven expert discovery over a document corpus.

The workflow mirrors how organizers actually hunt for participants: seed
keywords, look at which other terms co-occur with them, tighten the include
and exclude lists, rerun. Scoring is plain term counting rather than TF-IDF
or PMI so each iteration stays explainable to the humans driving it; the
scoring functions are the intended swap point if that ever changes.

A multi-word term "is present" in a document when each of its tokens is
present (bag-of-words containment, not a phrase query); its frequency is the
minimum of its tokens' frequencies.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import Corpus
from .errors import InputError
from .textnorm import STOPWORDS, normalize_and_stem, stem_token, tokenize

_MIN_TOKEN_LEN = 2


@dataclass(frozen=True)
class Posting:
    doc_id: str
    tf: int


@dataclass(frozen=True)
class TermIndex:
    """Inverted index over stemmed, stopword-filtered document text."""

    postings: dict[str, tuple[Posting, ...]]
    doc_terms: dict[str, dict[str, int]]
    doc_count: int

    @property
    def vocabulary(self) -> set[str]:
        return set(self.postings)


@dataclass
class KeywordSpec:
    """Ordered include/exclude keyword lists, normalized on construction.

    The normalized include and exclude sets must be disjoint; an overlap is
    a data error (one iteration of the list cannot both want and reject the
    same concept).
    """

    include_terms: tuple[str, ...]
    exclude_terms: tuple[str, ...]
    norm_include: tuple[str, ...] = field(init=False)
    norm_exclude: tuple[str, ...] = field(init=False)

    def __post_init__(self) -> None:
        self.include_terms = tuple(self.include_terms)
        self.exclude_terms = tuple(self.exclude_terms)
        self.norm_include = _normalize_unique(self.include_terms)
        self.norm_exclude = _normalize_unique(self.exclude_terms)
        overlap = set(self.norm_include) & set(self.norm_exclude)
        if overlap:
            raise InputError(
                "include and exclude terms overlap after normalization: "
                + ", ".join(sorted(overlap))
            )


@dataclass(frozen=True)
class ExpertHit:
    researcher_id: str
    score: int
    supporting_documents: tuple[tuple[str, tuple[str, ...]], ...]


def _normalize_unique(terms: tuple[str, ...]) -> tuple[str, ...]:
    out: list[str] = []
    for term in terms:
        norm = normalize_and_stem(term)
        if norm not in out:
            out.append(norm)
    return tuple(out)


def load_keyword_spec(path: str | Path) -> KeywordSpec:
    """Read a keyword spec JSON file: {"include": [...], "exclude": [...]}."""
    path = Path(path)
    if not path.is_file():
        raise InputError(f"keyword spec file not found: {path}")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(raw, dict) or "include" not in raw:
        raise InputError(f"{path}: expected an object with an 'include' array")
    unknown = set(raw) - {"include", "exclude"}
    if unknown:
        raise InputError(f"{path}: unknown key(s) {sorted(unknown)}")
    include = raw["include"]
    exclude = raw.get("exclude", [])
    for name, value in (("include", include), ("exclude", exclude)):
        if not isinstance(value, list) or not all(isinstance(t, str) for t in value):
            raise InputError(f"{path}: '{name}' must be an array of strings")
    return KeywordSpec(include_terms=tuple(include), exclude_terms=tuple(exclude))


def build_index(corpus: Corpus) -> TermIndex:
    """Index title + abstract of every document.

    Tokens are split on non-alphanumeric boundaries; raw lowercased tokens
    on the stopword list are dropped, the rest are stemmed, and stems
    shorter than two characters are discarded.
    """
    doc_terms: dict[str, dict[str, int]] = {}
    postings: dict[str, list[Posting]] = {}
    for doc in corpus.documents:
        counts: dict[str, int] = {}
        for token in tokenize(doc.title + " " + doc.abstract):
            if token in STOPWORDS:
                continue
            stem = stem_token(token)
            if len(stem) < _MIN_TOKEN_LEN:
                continue
            counts[stem] = counts.get(stem, 0) + 1
        doc_terms[doc.id] = counts
        for term, tf in counts.items():
            postings.setdefault(term, []).append(Posting(doc_id=doc.id, tf=tf))
    return TermIndex(
        postings={term: tuple(plist) for term, plist in sorted(postings.items())},
        doc_terms=doc_terms,
        doc_count=len(corpus.documents),
    )


def term_frequency(doc_counts: dict[str, int], term: str) -> int:
    """Frequency of a (possibly multi-word) normalized term in one document."""
    tokens = term.split(" ")
    return min(doc_counts.get(tok, 0) for tok in tokens)


def expand_keywords(
    index: TermIndex, spec: KeywordSpec, top_k: int
) -> list[tuple[str, int]]:
    """Suggest vocabulary terms that co-occur with the include terms.

    A candidate term t earns min(tf(t, d), tf_seed(d)) from every document d
    that contains both it and at least one include term, where tf_seed(d) is
    the combined frequency of include terms in d. Terms already on the
    include or exclude lists are never suggested. Results are sorted by
    score descending, ties broken lexicographically, truncated to top_k.
    """
    if top_k < 1:
        raise ValueError(f"top_k must be >= 1, got {top_k}")
    banned = set(spec.norm_include) | set(spec.norm_exclude)
    scores: dict[str, int] = {}
    for counts in index.doc_terms.values():
        seed_tf = sum(term_frequency(counts, t) for t in spec.norm_include)
        if seed_tf == 0:
            continue
        for term, tf in counts.items():
            if term in banned:
                continue
            scores[term] = scores.get(term, 0) + min(tf, seed_tf)
    ranked = sorted(scores.items(), key=lambda item: (-item[1], item[0]))
    return ranked[:top_k]


def find_experts(index: TermIndex, corpus: Corpus, spec: KeywordSpec) -> list[ExpertHit]:
    """Rank researchers by how much matching output they have authored.

    A document matches when it contains at least one include term and no
    exclude term; each author of a matching document earns the number of
    distinct include terms it contains. Researchers with no matching
    documents are omitted. Output is sorted by score descending, then id.
    """
    scores: dict[str, int] = {}
    support: dict[str, list[tuple[str, tuple[str, ...]]]] = {}
    for doc in corpus.documents:
        counts = index.doc_terms[doc.id]
        matched = [t for t in spec.norm_include if term_frequency(counts, t) > 0]
        if not matched:
            continue
        if any(term_frequency(counts, t) > 0 for t in spec.norm_exclude):
            continue
        matched_sorted = tuple(sorted(matched))
        for author in doc.author_ids:
            scores[author] = scores.get(author, 0) + len(matched)
            support.setdefault(author, []).append((doc.id, matched_sorted))
    hits = [
        ExpertHit(
            researcher_id=rid,
            score=score,
            supporting_documents=tuple(sorted(support[rid])),
        )
        for rid, score in scores.items()
    ]
    hits.sort(key=lambda h: (-h.score, h.researcher_id))
    return hits
