"""eventmatch: batch matchmaking for research networking events.

Discovers subject-matter experts from a document corpus, scores pairwise
matches from survey data, excludes prior collaborators via a collaboration
graph, and emits seating charts, meeting schedules, network diagrams, and a
better-than-chance baseline comparison.
"""

from .corpus import (
    CollaborationGraph,
    Corpus,
    Document,
    DocumentKind,
    Researcher,
    build_collaboration_graph,
    has_prior_collaboration,
    load_corpus,
)
from .discovery import (
    ExpertHit,
    KeywordSpec,
    TermIndex,
    build_index,
    expand_keywords,
    find_experts,
    load_keyword_spec,
)
from .errors import InputError, PipelineError
from .matching import (
    BaselineReport,
    MatchEdge,
    MatchWeights,
    all_matches,
    baseline_comparison,
    rank_matches,
    score_pair,
)
from .pipeline import PipelineConfig, load_config, run_pipeline
from .reports import export_interest_graph
from .scheduling import EventWindow, Meeting, Schedule, build_schedule, validate_schedule
from .seating import SeatingPlan, assign_tables
from .survey import (
    Strength,
    SurveyLoad,
    SurveyResponse,
    TopicCatalog,
    load_topic_catalog,
    parse_surveys,
)
from .textnorm import normalize_and_stem

__version__ = "0.1.0"

__all__ = [
    "BaselineReport",
    "CollaborationGraph",
    "Corpus",
    "Document",
    "DocumentKind",
    "EventWindow",
    "ExpertHit",
    "InputError",
    "KeywordSpec",
    "MatchEdge",
    "MatchWeights",
    "Meeting",
    "PipelineConfig",
    "PipelineError",
    "Researcher",
    "Schedule",
    "SeatingPlan",
    "Strength",
    "SurveyLoad",
    "SurveyResponse",
    "TermIndex",
    "TopicCatalog",
    "all_matches",
    "assign_tables",
    "baseline_comparison",
    "build_collaboration_graph",
    "build_index",
    "build_schedule",
    "expand_keywords",
    "export_interest_graph",
    "find_experts",
    "has_prior_collaboration",
    "load_config",
    "load_corpus",
    "load_keyword_spec",
    "load_topic_catalog",
    "normalize_and_stem",
    "parse_surveys",
    "rank_matches",
    "run_pipeline",
    "score_pair",
    "validate_schedule",
]
