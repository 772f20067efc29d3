import itertools
import random
from pathlib import Path

import pytest

from eventmatch.corpus import (
    Corpus,
    Document,
    DocumentKind,
    Researcher,
    build_collaboration_graph,
    load_corpus,
)
from eventmatch.discovery import build_index
from eventmatch.matching import all_matches
from eventmatch.survey import Strength, SurveyResponse, load_topic_catalog, parse_surveys

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures" / "event12"


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURE_DIR


@pytest.fixture(scope="session")
def corpus():
    return load_corpus(FIXTURE_DIR / "researchers.csv", FIXTURE_DIR / "documents.jsonl")


@pytest.fixture(scope="session")
def graph(corpus):
    return build_collaboration_graph(corpus)


@pytest.fixture(scope="session")
def catalog():
    return load_topic_catalog(FIXTURE_DIR / "topics.txt")


@pytest.fixture(scope="session")
def surveys(corpus, catalog):
    return list(parse_surveys(FIXTURE_DIR / "surveys.csv", catalog, corpus).responses)


@pytest.fixture(scope="session")
def edges(surveys, corpus, graph):
    return all_matches(surveys, corpus.researchers, graph)


@pytest.fixture(scope="session")
def index(corpus):
    return build_index(corpus)


INSTITUTIONS = ["Inst A", "Inst B", "Inst C"]
TOPICS = [
    "oncology",
    "genomic",
    "imag",
    "neuroscience",
    "epidemiology",
    "data science",
    "metabolism",
    "immunology",
]
METHODS = [
    "biostatistic",
    "flow cytometry",
    "machine learn",
    "survey design",
    "mas spectrometry",
    "crispr screen",
    "image analysi",
    "biobank",
]


def make_instance(rng: random.Random, n_attendees: int | None = None):
    """Random event instance: (corpus, graph, surveys).

    Researchers get random institutions, surveys get random interest and
    method sets (terms drawn pre-normalized), and a random subset of pairs
    share a two-author document so the collaboration graph has real edges.
    """
    n = n_attendees if n_attendees is not None else rng.randint(4, 9)
    researchers = {
        f"p{i:02d}": Researcher(
            id=f"p{i:02d}", name=f"Person {i:02d}", institution=rng.choice(INSTITUTIONS)
        )
        for i in range(n)
    }
    ids = sorted(researchers)
    documents = []
    for a, b in itertools.combinations(ids, 2):
        if rng.random() < 0.18:
            documents.append(
                Document(
                    id=f"g{len(documents):03d}",
                    kind=DocumentKind.PUBLICATION,
                    title="joint work",
                    abstract="",
                    author_ids=(a, b),
                )
            )
    corpus = Corpus(researchers=researchers, documents=tuple(documents))
    graph = build_collaboration_graph(corpus)
    surveys = []
    for rid in ids:
        interests = {}
        for topic in TOPICS:
            roll = rng.random()
            if roll < 0.20:
                interests[topic] = Strength.STRONG
            elif roll < 0.35:
                interests[topic] = Strength.MILD
        surveys.append(
            SurveyResponse(
                researcher_id=rid,
                interests=interests,
                methods_offered=frozenset(m for m in METHODS if rng.random() < 0.3),
                methods_needed=frozenset(m for m in METHODS if rng.random() < 0.3),
            )
        )
    return corpus, graph, surveys


@pytest.fixture(scope="session")
def instance_factory():
    return make_instance
