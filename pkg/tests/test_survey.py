import pytest

from eventmatch.errors import InputError
from eventmatch.survey import (
    Strength,
    TopicCatalog,
    load_topic_catalog,
    parse_surveys,
    render_surveys_csv,
)
from eventmatch.textnorm import normalize_and_stem

HEADER = "researcher_id,interests,methods_offered,methods_needed\n"


@pytest.fixture()
def survey_path(tmp_path):
    def write(body: str):
        path = tmp_path / "surveys.csv"
        path.write_text(HEADER + body, encoding="utf-8")
        return path

    return write


def test_minimal_row(survey_path, catalog, corpus):
    path = survey_path("r1,oncology:strong,flow cytometry,biostatistics\n")
    load = parse_surveys(path, catalog, corpus)
    assert load.replaced == 0
    (resp,) = load.responses
    assert resp.researcher_id == "r1"
    assert resp.interests == {"oncology": Strength.STRONG}
    assert resp.methods_offered == frozenset({"flow cytometry"})
    assert resp.methods_needed == frozenset({"biostatistic"})


def test_topic_outside_catalog_rejected(survey_path, catalog, corpus):
    path = survey_path("r1,astrology:strong,,\n")
    with pytest.raises(InputError, match="topic not in catalog: astrology"):
        parse_surveys(path, catalog, corpus)


def test_bad_strength_rejected(survey_path, catalog, corpus):
    path = survey_path("r1,oncology:severe,,\n")
    with pytest.raises(InputError, match="invalid interest strength"):
        parse_surveys(path, catalog, corpus)


def test_unknown_researcher_rejected(survey_path, catalog, corpus):
    path = survey_path("zz,oncology:strong,,\n")
    with pytest.raises(InputError, match="unknown researcher id 'zz'"):
        parse_surveys(path, catalog, corpus)


def test_malformed_interest_rejected(survey_path, catalog, corpus):
    path = survey_path("r1,oncology,,\n")
    with pytest.raises(InputError, match="not 'topic:strength'"):
        parse_surveys(path, catalog, corpus)


def test_duplicate_rows_keep_last_and_count(survey_path, catalog, corpus):
    path = survey_path(
        "r1,oncology:strong,flow cytometry,\n"
        "r2,oncology:mild,,\n"
        "r1,genomics:mild,,biostatistics\n"
    )
    load = parse_surveys(path, catalog, corpus)
    assert load.replaced == 1
    assert [r.researcher_id for r in load.responses] == ["r1", "r2"]
    r1 = load.responses[0]
    assert r1.interests == {"genomic": Strength.MILD}
    assert r1.methods_offered == frozenset()
    assert r1.methods_needed == frozenset({"biostatistic"})


def test_fixture_file_loads_12_responses(surveys):
    assert len(surveys) == 12
    # spot-check r5 against the raw file
    r5 = next(r for r in surveys if r.researcher_id == "r5")
    assert r5.interests == {
        "epidemiology": Strength.STRONG,
        "data science": Strength.STRONG,
    }
    assert r5.methods_offered == frozenset({"survey design"})
    assert r5.methods_needed == frozenset({"biostatistic", "machine learn"})


def test_all_stored_strings_are_normal_forms(surveys, catalog):
    for resp in surveys:
        for topic in resp.interests:
            assert topic in catalog.topics
            assert normalize_and_stem(topic) == topic
        for method in resp.methods_offered | resp.methods_needed:
            assert normalize_and_stem(method) == method


def test_round_trip(surveys, catalog, corpus, tmp_path):
    path = tmp_path / "again.csv"
    path.write_text(render_surveys_csv(surveys), encoding="utf-8")
    reparsed = parse_surveys(path, catalog, corpus)
    assert list(reparsed.responses) == list(surveys)
    assert reparsed.replaced == 0


def test_offering_and_needing_same_method_is_legal(survey_path, catalog, corpus):
    path = survey_path("r1,,biostatistics,biostatistics\n")
    (resp,) = parse_surveys(path, catalog, corpus).responses
    assert resp.methods_offered == resp.methods_needed == frozenset({"biostatistic"})


def test_catalog_parsing(tmp_path):
    path = tmp_path / "topics.txt"
    path.write_text("# comment\noncology\n\nGenomics  # trailing note\n", encoding="utf-8")
    catalog = load_topic_catalog(path)
    assert catalog.topics == frozenset({"oncology", "genomic"})


def test_empty_catalog_rejected(tmp_path):
    path = tmp_path / "topics.txt"
    path.write_text("# nothing but comments\n", encoding="utf-8")
    with pytest.raises(InputError, match="empty"):
        load_topic_catalog(path)


def test_empty_catalog_type_rejected():
    with pytest.raises(InputError):
        TopicCatalog(topics=frozenset())
