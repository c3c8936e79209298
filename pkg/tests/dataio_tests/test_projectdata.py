import json
import math

import pandas
import pytest

from spherecells.dataio import DataWorkflowBasic, OutputFilenames, read_table, save_summary, save_table
from spherecells.lab import Assertion, ExperimentResult


@pytest.fixture
def result() -> ExperimentResult:
	table = pandas.DataFrame({"trial_id": [0, 1], "value": [0.5, 0.1]})
	fitted = {"slope": -1.0, "missing": math.nan, "huge": math.inf}
	return ExperimentResult("covering", table, fitted, [Assertion("covering_inclusion", True, "0 rows outside")])


def test_save_table(tmp_path, result):
	filename = save_table(result.table, tmp_path / "covering.csv", ["cellcert 0.3.0", "master_seed 4"])
	assert filename.read_text() == "# cellcert 0.3.0\n# master_seed 4\ntrial_id,value\n0,0.5\n1,0.10000000000000001\n"
	loaded = read_table(filename)
	assert loaded["value"].tolist() == [0.5, 0.1]
	assert list(loaded.columns) == ["trial_id", "value"]


def test_save_summary(tmp_path, result):
	filename = save_summary(result, tmp_path / "covering.summary.json", "0.3.0", wall_time = 1.5)
	data = json.loads(filename.read_text())
	assert data == {
		"experiment": "covering",
		"fitted":     {"slope": -1.0, "missing": None, "huge": "inf"},
		"assertions": [{"name": "covering_inclusion", "passed": True, "detail": "0 rows outside"}],
		"passed":     True,
		"schema":     1,
		"version":    "0.3.0",
		"wall_time":  1.5
	}


def test_data_workflow_basic(tmp_path):
	filename = tmp_path / "options.json"
	DataWorkflowBasic(version = "0.3.0", program_options = {"d": 4, "output_path": tmp_path}).save(filename)
	assert json.loads(filename.read_text()) == {"d": 4, "output_path": str(tmp_path), "version": "0.3.0"}


def test_output_filenames(tmp_path):
	paths = OutputFilenames(tmp_path / "runs", "subset-size")
	assert paths.folder_supplementary.is_dir()
	assert paths.filename_table.name == "subset-size.csv"
	assert paths.filename_summary.name == "subset-size.summary.json"
	assert paths.filename_options == paths.folder_supplementary / "subset-size.options.json"
