"""Project and weight files, and report emission."""

import json
from fractions import Fraction
from pathlib import Path

import pytest

from octopus_lab.algebra import TranspositionWeights
from octopus_lab.errors import PreconditionError, ProjectFileError, WeightsFileError
from octopus_lab.projects import load_project, load_weights, save_project
from octopus_lab.reports import to_csv, to_json, to_text, witness_path, write_witness
from octopus_lab.verify import TrialRecord, check_close, table1, verify_coxeter_path

PROJECTS_DIR = Path(__file__).parent.parent / "projects"


class TestProjects:
    def test_save_load(self, tmp_path):
        path = tmp_path / "run.json"
        save_project(path, "run", {"n": 6, "seed": 9})
        assert load_project(path) == {"n": 6, "seed": 9}
        assert json.loads(path.read_text())["project_name"] == "run"

    def test_bundled_example(self):
        settings = load_project(PROJECTS_DIR / "example_aldous.json")
        assert settings["subcommand"] == "aldous"

    def test_missing_file(self, tmp_path):
        with pytest.raises(ProjectFileError):
            load_project(tmp_path / "nope.json")

    def test_not_json(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text("{not json")
        with pytest.raises(PreconditionError):
            load_project(path)

    def test_settings_not_an_object(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"settings": [1, 2]}))
        with pytest.raises(ProjectFileError):
            load_project(path)


class TestWeightFiles:
    def test_bundled_weights(self):
        W = load_weights(PROJECTS_DIR / "weights" / "octopus5.json")
        assert W.n == 5
        assert W.weight(1, 2) == Fraction(1, 3)

    def test_load_written_weights(self, tmp_path):
        W = TranspositionWeights(4, {(1, 4): Fraction(2, 3), (2, 3): 1})
        path = tmp_path / "w.json"
        path.write_text(json.dumps(W.to_json()))
        assert load_weights(path) == W

    def test_not_json(self, tmp_path):
        path = tmp_path / "w.json"
        path.write_text("{edges")
        with pytest.raises(WeightsFileError):
            load_weights(path)

    def test_missing_key(self, tmp_path):
        path = tmp_path / "w.json"
        path.write_text(json.dumps({"edges": []}))
        with pytest.raises(WeightsFileError):
            load_weights(path)

    def test_zero_denominator(self, tmp_path):
        path = tmp_path / "w.json"
        path.write_text(json.dumps({"n": 3, "edges": [{"i": 1, "j": 2, "num": 1, "den": 0}]}))
        with pytest.raises(WeightsFileError):
            load_weights(path)

    def test_loop(self, tmp_path):
        path = tmp_path / "w.json"
        path.write_text(json.dumps({"n": 3, "edges": [{"i": 2, "j": 2, "num": 1, "den": 1}]}))
        with pytest.raises(WeightsFileError):
            load_weights(path)


class TestReports:
    def test_json_is_sorted_and_stable(self):
        reports = [verify_coxeter_path(4)]
        text = to_json(reports, {"seed": 1})
        assert text == to_json(reports, {"seed": 1})
        data = json.loads(text)
        assert list(data) == sorted(data)
        assert "timestamp" not in data
        assert "timestamp" in json.loads(to_json(reports, {}, include_timestamp=True))

    def test_text_lists_failures(self):
        report = verify_coxeter_path(3)
        report.trials.append(TrialRecord(1, [check_close("forced", 1.0, 2.0, 1e-9)]))
        text = to_text([report])
        assert "coxeter: FAIL" in text
        assert "forced: 1.0 vs 2.0" in text

    def test_csv_rejects_non_tables(self):
        with pytest.raises(ValueError):
            to_csv([verify_coxeter_path(3)])

    def test_csv_table1(self):
        lines = to_csv([table1()]).splitlines()
        assert len(lines) == 6
        assert lines[1] == "(4),1,1,1,2"

    def test_witness_path(self, tmp_path):
        assert witness_path("caputo", 7, 3, str(tmp_path / "out.json")) == tmp_path / "caputo_witness_7_3.json"

    def test_write_witness(self, tmp_path):
        record = TrialRecord(2, [check_close("x", 0.0, 1.0, 1e-9)], {"family": []})
        path = write_witness("caputo", record, 5, str(tmp_path / "out.json"))
        data = json.loads(path.read_text())
        assert data["seed"] == 5
        assert data["trial"]["index"] == 2
        assert not data["trial"]["passed"]
