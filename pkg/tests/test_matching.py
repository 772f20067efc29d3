import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eventmatch.corpus import Corpus, Researcher, build_collaboration_graph
from eventmatch.errors import InputError
from eventmatch.matching import (
    MatchWeights,
    all_matches,
    baseline_comparison,
    greedy_matching_total,
    random_matching_totals,
    rank_matches,
    score_pair,
)
from eventmatch.survey import Strength, SurveyResponse

from conftest import make_instance


def researcher_table(*specs):
    """specs: (rid, institution)"""
    return {rid: Researcher(id=rid, name=f"Name {rid}", institution=inst) for rid, inst in specs}


def empty_graph(researchers):
    return build_collaboration_graph(Corpus(researchers=researchers, documents=()))


def survey(rid, strong=(), mild=(), offers=(), needs=()):
    interests = {t: Strength.STRONG for t in strong}
    interests.update({t: Strength.MILD for t in mild})
    return SurveyResponse(
        researcher_id=rid,
        interests=interests,
        methods_offered=frozenset(offers),
        methods_needed=frozenset(needs),
    )


def test_reciprocal_pair_hand_scored():
    researchers = researcher_table(("a", "Inst A"), ("b", "Inst B"))
    graph = empty_graph(researchers)
    a = survey("a", strong=["oncology"], offers=["flow"], needs=["biostat"])
    b = survey("b", strong=["oncology"], offers=["biostat"], needs=["flow"])
    edge = score_pair(a, b, researchers, graph)
    assert edge.directed_ab == frozenset({"biostat"})
    assert edge.directed_ba == frozenset({"flow"})
    assert edge.reciprocal
    assert not edge.excluded_prior_collaboration
    assert edge.base_score == 1 * 1 + 2 * 2 + 5  # == 10
    assert edge.adjusted_score == 11  # cross-institution bonus


def test_no_overlap_scores_zero():
    researchers = researcher_table(("a", "Inst A"), ("b", "Inst A"))
    graph = empty_graph(researchers)
    edge = score_pair(survey("a"), survey("b"), researchers, graph)
    assert edge.shared_strong_interests == frozenset()
    assert edge.directed_ab == edge.directed_ba == frozenset()
    assert not edge.reciprocal
    assert edge.base_score == 0
    assert edge.adjusted_score == 0


def test_dropping_one_direction_loses_reciprocal_premium():
    researchers = researcher_table(("a", "Inst A"), ("b", "Inst B"))
    graph = empty_graph(researchers)
    a = survey("a", strong=["oncology"], offers=["flow"], needs=["biostat"])
    b_nothing_for_a = survey("b", strong=["oncology"], offers=[], needs=["flow"])
    edge = score_pair(a, b_nothing_for_a, researchers, graph)
    assert not edge.reciprocal
    assert edge.base_score == 1 * 1 + 2 * 1 + 0  # == 3, down from 10
    assert edge.base_score < 10


def test_strong_mild_interest_overlap_earns_nothing():
    researchers = researcher_table(("a", "Inst A"), ("b", "Inst A"))
    graph = empty_graph(researchers)
    a = survey("a", strong=["oncology"])
    b = survey("b", mild=["oncology"])
    assert score_pair(a, b, researchers, graph).base_score == 0


def test_score_pair_symmetry():
    researchers = researcher_table(("a", "Inst A"), ("b", "Inst B"))
    graph = empty_graph(researchers)
    a = survey("a", strong=["oncology"], offers=["flow"], needs=["biostat"])
    b = survey("b", offers=["biostat"], needs=["flow"])
    ab = score_pair(a, b, researchers, graph)
    ba = score_pair(b, a, researchers, graph)
    assert ab.pair == ba.pair
    assert ab.directed_ab == ba.directed_ba
    assert ab.directed_ba == ba.directed_ab
    assert ab.base_score == ba.base_score
    assert ab.adjusted_score == ba.adjusted_score


def test_same_researcher_rejected():
    researchers = researcher_table(("a", "Inst A"))
    graph = empty_graph(researchers)
    with pytest.raises(InputError):
        score_pair(survey("a"), survey("a"), researchers, graph)


def test_prior_collaboration_flag_set(corpus, graph, surveys):
    by_id = {s.researcher_id: s for s in surveys}
    edge = score_pair(by_id["r3"], by_id["r7"], corpus.researchers, graph)
    assert edge.excluded_prior_collaboration
    # still scored: exclusion is a flag, not a zeroing
    assert edge.base_score > 0


def test_all_matches_counts_and_order():
    researchers = researcher_table(("a", "X"), ("b", "X"), ("c", "Y"))
    graph = empty_graph(researchers)
    edges = all_matches([survey("a"), survey("b"), survey("c")], researchers, graph)
    assert [(e.a_id, e.b_id) for e in edges] == [("a", "b"), ("a", "c"), ("b", "c")]
    with pytest.raises(InputError):
        all_matches([survey("a")], researchers, graph)


def test_fixture_has_66_edges(edges):
    assert len(edges) == 66


def test_fixture_edges_match_per_pair_recompute(corpus, graph, surveys, edges):
    by_id = {s.researcher_id: s for s in surveys}
    for edge in edges:
        again = score_pair(by_id[edge.a_id], by_id[edge.b_id], corpus.researchers, graph)
        assert again == edge


def test_weight_scaling_preserves_order(corpus, graph, surveys, edges):
    scale = 3.0
    scaled = all_matches(
        surveys,
        corpus.researchers,
        graph,
        MatchWeights(
            w_interest=1 * scale,
            w_directed=2 * scale,
            w_reciprocal=5 * scale,
            cross_institution_bonus=1 * scale,
        ),
    )
    for before, after in zip(edges, scaled):
        assert after.base_score == pytest.approx(before.base_score * scale)
        assert after.adjusted_score == pytest.approx(before.adjusted_score * scale)
    base_rank = rank_matches(edges, per_attendee_k=5)
    scaled_rank = rank_matches(scaled, per_attendee_k=5)
    for rid in base_rank:
        assert [e.pair for e in base_rank[rid]] == [e.pair for e in scaled_rank[rid]]


def test_negative_weight_rejected():
    with pytest.raises(InputError):
        MatchWeights(w_interest=-1)


def test_weights_from_mapping_defaults_and_unknown_keys():
    weights = MatchWeights.from_mapping({"w_reciprocal": 8})
    assert weights.w_reciprocal == 8
    assert weights.w_interest == 1
    assert weights.w_directed == 2
    assert weights.cross_institution_bonus == 1
    with pytest.raises(InputError, match="unknown weight"):
        MatchWeights.from_mapping({"w_recip": 8})


def test_rank_single_edge_appears_for_both_endpoints():
    researchers = researcher_table(("a", "X"), ("b", "Y"), ("c", "X"))
    graph = empty_graph(researchers)
    edges = all_matches(
        [survey("a", strong=["oncology"]), survey("b", strong=["oncology"]), survey("c")],
        researchers,
        graph,
    )
    ranked = rank_matches(edges, per_attendee_k=2)
    assert [e.pair for e in ranked["a"]][0] == ("a", "b")
    assert [e.pair for e in ranked["b"]][0] == ("a", "b")


def test_rank_excludes_prior_collaborators_by_default(instance_factory):
    rng = random.Random(5)
    for _ in range(20):
        corpus, graph, surveys = instance_factory(rng)
        edges = all_matches(surveys, corpus.researchers, graph)
        ranked = rank_matches(edges, per_attendee_k=4)
        for rid, mine in ranked.items():
            for e in mine:
                assert not e.excluded_prior_collaboration
                assert e.adjusted_score > 0
                assert rid in (e.a_id, e.b_id)
        with_excluded = rank_matches(edges, per_attendee_k=4, include_excluded=True)
        for rid in with_excluded:
            assert len(with_excluded[rid]) >= len(ranked[rid])


def test_rank_matches_fixture_against_brute_force(edges):
    ranked = rank_matches(edges, per_attendee_k=3)
    attendees = {rid for e in edges for rid in (e.a_id, e.b_id)}
    assert set(ranked) == attendees
    for rid in attendees:
        mine = [
            e
            for e in edges
            if rid in (e.a_id, e.b_id)
            and not e.excluded_prior_collaboration
            and e.adjusted_score > 0
        ]
        mine.sort(key=lambda e: (-e.adjusted_score, -e.base_score, e.pair))
        assert ranked[rid] == mine[:3]


def test_rank_rejects_bad_k(edges):
    with pytest.raises(ValueError):
        rank_matches(edges, per_attendee_k=0)


def test_baseline_all_zero_edges():
    researchers = researcher_table(("a", "X"), ("b", "X"), ("c", "X"), ("d", "X"))
    graph = empty_graph(researchers)
    edges = all_matches([survey(r) for r in "abcd"], researchers, graph)
    report = baseline_comparison(edges, trials=200, seed=1)
    assert report.engine_total == 0
    assert report.random_mean == 0
    assert report.random_stddev == 0
    assert report.ratio == 0


def test_baseline_analytic_four_attendees():
    # exactly one of the three perfect matchings on 4 vertices scores > 0,
    # so the random mean converges to engine_total / 3
    researchers = researcher_table(("a", "X"), ("b", "X"), ("c", "X"), ("d", "X"))
    graph = empty_graph(researchers)
    surveys = [
        survey("a", strong=["oncology"]),
        survey("b", strong=["oncology"]),
        survey("c"),
        survey("d"),
    ]
    edges = all_matches(surveys, researchers, graph)
    report = baseline_comparison(edges, trials=10000, seed=42)
    assert report.engine_total == 1
    assert report.random_mean == pytest.approx(report.engine_total / 3, rel=0.05)


def test_baseline_rejects_small_groups():
    researchers = researcher_table(("a", "X"), ("b", "X"), ("c", "X"))
    graph = empty_graph(researchers)
    edges = all_matches([survey(r) for r in "abc"], researchers, graph)
    with pytest.raises(InputError, match="at least 4"):
        baseline_comparison(edges, trials=10, seed=0)
    with pytest.raises(ValueError):
        random_matching_totals(edges, trials=0, seed=0)


def test_baseline_deterministic_for_fixed_seed(edges):
    first = baseline_comparison(edges, trials=500, seed=7)
    second = baseline_comparison(edges, trials=500, seed=7)
    assert first == second
    assert baseline_comparison(edges, trials=500, seed=8) != first


def test_baseline_odd_attendee_count_sits_one_out():
    researchers = researcher_table(("a", "X"), ("b", "X"), ("c", "X"), ("d", "X"), ("e", "X"))
    graph = empty_graph(researchers)
    surveys = [survey(r, strong=["oncology"]) for r in "abcde"]
    edges = all_matches(surveys, researchers, graph)
    totals = random_matching_totals(edges, trials=50, seed=3)
    # 5 attendees -> 2 pairs per trial, each pair worth 1
    assert all(total == 2 for total in totals)


def test_greedy_matching_skips_excluded_edges():
    rng = random.Random(11)
    for _ in range(20):
        corpus, graph, surveys = make_instance(rng)
        edges = all_matches(surveys, corpus.researchers, graph)
        total = greedy_matching_total(edges)
        eligible = [e for e in edges if not e.excluded_prior_collaboration]
        free = {rid for e in edges for rid in (e.a_id, e.b_id)}
        expected = 0.0
        for e in sorted(eligible, key=lambda e: (-e.adjusted_score, e.pair)):
            a, b = e.pair
            if a in free and b in free:
                free -= {a, b}
                expected += e.adjusted_score
        assert total == expected


_topics = st.sets(st.sampled_from(["oncology", "genomic", "imag", "metabolism"]), max_size=3)
_methods = st.sets(
    st.sampled_from(["biostatistic", "flow cytometry", "machine learn", "biobank"]), max_size=3
)


@given(
    a_strong=_topics,
    b_strong=_topics,
    a_offers=_methods,
    a_needs=_methods,
    b_offers=_methods,
    b_needs=_methods,
    same_institution=st.booleans(),
)
def test_score_pair_invariants_hold_for_generated_surveys(
    a_strong, b_strong, a_offers, a_needs, b_offers, b_needs, same_institution
):
    researchers = researcher_table(("a", "Inst A"), ("b", "Inst A" if same_institution else "Inst B"))
    graph = empty_graph(researchers)
    a = survey("a", strong=a_strong, offers=a_offers, needs=a_needs)
    b = survey("b", strong=b_strong, offers=b_offers, needs=b_needs)
    edge = score_pair(a, b, researchers, graph)
    mirrored = score_pair(b, a, researchers, graph)
    assert edge.reciprocal == (bool(edge.directed_ab) and bool(edge.directed_ba))
    assert edge.base_score == (
        1 * len(edge.shared_strong_interests)
        + 2 * (len(edge.directed_ab) + len(edge.directed_ba))
        + 5 * int(edge.reciprocal)
    )
    assert edge.adjusted_score == edge.base_score + (0 if same_institution else 1)
    assert edge.adjusted_score >= edge.base_score
    assert mirrored.base_score == edge.base_score
    assert mirrored.adjusted_score == edge.adjusted_score
    assert mirrored.directed_ab == edge.directed_ba


def test_reciprocal_premium_property(instance_factory):
    # completing the reverse direction raises the score by at least
    # w_directed + w_reciprocal
    researchers = researcher_table(("a", "X"), ("b", "X"))
    graph = empty_graph(researchers)
    weights = MatchWeights()
    a = survey("a", strong=["oncology"], offers=[], needs=["biostat"])
    b = survey("b", strong=["oncology"], offers=["biostat"], needs=["flow"])
    one_way = score_pair(a, b, researchers, graph, weights)
    assert not one_way.reciprocal
    a_completing = survey("a", strong=["oncology"], offers=["flow"], needs=["biostat"])
    two_way = score_pair(a_completing, b, researchers, graph, weights)
    assert two_way.reciprocal
    assert two_way.base_score - one_way.base_score >= weights.w_directed + weights.w_reciprocal
