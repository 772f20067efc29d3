import json
import shutil
from pathlib import Path

import pytest

from eventmatch.errors import InputError, PipelineError
from eventmatch.pipeline import load_config, run_pipeline

EXPECTED_FILES = {
    "baseline.json",
    "baseline_histogram.png",
    "experts.csv",
    "interest_network.dot",
    "interest_network.png",
    "matches.csv",
    "ranked_matches.csv",
    "run_summary.json",
    "schedule.csv",
    "seating.csv",
    "seating_chart.png",
}


@pytest.fixture(scope="module")
def fast_run(tmp_path_factory, fixture_dir):
    out = tmp_path_factory.mktemp("run")
    config = load_config(fixture_dir / "config.json", output_dir=out, trials=500)
    summary = run_pipeline(config)
    return out, summary


def test_fixture_run_writes_all_artifacts(fast_run):
    out, summary = fast_run
    assert {p.name for p in out.iterdir()} == EXPECTED_FILES
    assert summary["attendees"] == 12
    assert summary["match_edges"] == 66
    assert summary["seating_objective"] > 0
    assert summary["baseline"]["ratio"] > 1.0


def test_summary_file_matches_return_value(fast_run):
    out, summary = fast_run
    on_disk = json.loads((out / "run_summary.json").read_text())
    assert on_disk == summary


def test_missing_surveys_file_names_path_and_stage(tmp_path, fixture_dir):
    broken = tmp_path / "cfg"
    shutil.copytree(fixture_dir, broken)
    (broken / "surveys.csv").unlink()
    config = load_config(broken / "config.json", output_dir=tmp_path / "out")
    with pytest.raises(PipelineError, match="surveys") as excinfo:
        run_pipeline(config)
    assert "surveys.csv" in str(excinfo.value)
    assert isinstance(excinfo.value.cause, InputError)


def test_config_validation(tmp_path, fixture_dir):
    with pytest.raises(InputError, match="not found"):
        load_config(tmp_path / "nope.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{}", encoding="utf-8")
    with pytest.raises(InputError, match="researchers"):
        load_config(bad)
    bad.write_text('{"researchers": "a", "documents": "b", "surveys": "c", "topics": "d", "zebra": 1}')
    with pytest.raises(InputError, match="unknown config key"):
        load_config(bad)
    good = fixture_dir / "config.json"
    with pytest.raises(InputError, match="trials"):
        load_config(good, trials=0)


def test_overrides_take_precedence(fixture_dir, tmp_path):
    config = load_config(
        fixture_dir / "config.json", output_dir=tmp_path, seed=7, trials=50, rounds=1
    )
    assert config.seed == 7
    assert config.trials == 50
    assert config.window.rounds == 1
    assert config.window.rooms == 3  # untouched keys keep file values
    assert config.output_dir == tmp_path


def test_relative_paths_resolve_against_config_dir(fixture_dir):
    config = load_config(fixture_dir / "config.json")
    assert config.researchers_path == fixture_dir / "researchers.csv"
    assert config.output_dir == fixture_dir / "out"


def test_output_dir_override_is_cwd_relative(fixture_dir):
    # a command-line path means "relative to where I am", not to the config
    config = load_config(fixture_dir / "config.json", output_dir="run1")
    assert config.output_dir == Path("run1")


def test_discovery_stage_is_optional(tmp_path, fixture_dir):
    raw = json.loads((fixture_dir / "config.json").read_text())
    del raw["keywords"]
    # the config moves to tmp_path, so point the data keys back at the fixture
    for key in ("researchers", "documents", "surveys", "topics"):
        raw[key] = str(fixture_dir / raw[key])
    raw.update(trials=200, output_dir=str(tmp_path / "out"))
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(raw))
    summary = run_pipeline(load_config(config_path))
    assert "expert_hits" not in summary
    names = {p.name for p in (tmp_path / "out").iterdir()}
    assert names == EXPECTED_FILES - {"experts.csv"}


def test_rerun_is_byte_identical(tmp_path, fixture_dir):
    outs = []
    for name in ("one", "two"):
        out = tmp_path / name
        run_pipeline(load_config(fixture_dir / "config.json", output_dir=out, trials=300))
        outs.append(out)
    first, second = outs
    names = sorted(p.name for p in first.iterdir())
    assert names == sorted(p.name for p in second.iterdir())
    for name in names:
        assert (first / name).read_bytes() == (second / name).read_bytes(), name
