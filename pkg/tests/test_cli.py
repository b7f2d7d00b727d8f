import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from eidrisk.cli import main
from eidrisk.report import report_json
from eidrisk.samples import example_1, fixture_document
from eidrisk.store import load_register, risk_to_dict, save_register

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, register, *args, **kwargs):
    return runner.invoke(main, ["--register", str(register), *args],
                         catch_exceptions=False, **kwargs)


class TestInit:
    def test_creates_valid_register(self, runner, tmp_path):
        path = tmp_path / "r.json"
        result = invoke(runner, path, "init")
        assert result.exit_code == 0
        doc = load_register(path)
        assert doc.risks == ()
        gov = doc.context.weightings[list(doc.context.weightings)[0]]
        assert sorted(gov.weights.values()) == [1, 2, 3, 4, 5, 6, 7]
        assert list(gov.weights.values()) == [7, 6, 5, 4, 3, 2, 1]

    def test_existing_path_exit_3(self, runner, tmp_path):
        path = tmp_path / "r.json"
        invoke(runner, path, "init")
        result = invoke(runner, path, "init")
        assert result.exit_code == 3
        assert "r.json" in result.output

    def test_force_overwrites(self, runner, tmp_path):
        path = tmp_path / "r.json"
        invoke(runner, path, "init", "--with-samples")
        result = invoke(runner, path, "init", "--force")
        assert result.exit_code == 0
        assert load_register(path).risks == ()

    def test_with_samples(self, runner, tmp_path):
        path = tmp_path / "r.json"
        result = invoke(runner, path, "init", "--with-samples")
        assert result.exit_code == 0
        assert [r.id for r in load_register(path).risks] == [
            "example-1", "example-2"]


class TestRiskCommands:
    def test_add_from_file(self, runner, tmp_path):
        register = tmp_path / "r.json"
        invoke(runner, register, "init")
        risk_file = tmp_path / "risk.json"
        risk_file.write_text(json.dumps(risk_to_dict(example_1())))
        result = invoke(runner, register, "risk", "add", str(risk_file))
        assert result.exit_code == 0
        assert "version 1" in result.output
        assert len(load_register(register).risks) == 1

    def test_add_duplicate_id_exit_1(self, runner, register_path, tmp_path):
        risk_file = tmp_path / "risk.json"
        risk_file.write_text(json.dumps(risk_to_dict(example_1())))
        result = invoke(runner, register_path, "risk", "add", str(risk_file))
        assert result.exit_code == 1
        assert "already exists" in result.output

    def test_add_out_of_range_value_exit_1(self, runner, register_path,
                                           tmp_path):
        data = risk_to_dict(example_1())
        data["id"] = "broken"
        data["assessments"]["government"][0]["value"] = 120
        risk_file = tmp_path / "risk.json"
        risk_file.write_text(json.dumps(data))
        result = invoke(runner, register_path, "risk", "add", str(risk_file))
        assert result.exit_code == 1
        assert "rights: value out of range" in result.output

    def test_add_incomplete_lists_missing_areas(self, runner, register_path,
                                                tmp_path):
        data = risk_to_dict(example_1())
        data["id"] = "incomplete"
        data["assessments"]["government"] = data["assessments"]["government"][:2]
        risk_file = tmp_path / "risk.json"
        risk_file.write_text(json.dumps(data))
        result = invoke(runner, register_path, "risk", "add", str(risk_file))
        assert result.exit_code == 1
        for area in ("political", "economic", "operational"):
            assert area in result.output

    def test_edit_bumps_version(self, runner, register_path):
        data = risk_to_dict(example_1())
        data["title"] = "edited"
        risk_file = register_path.parent / "edit.json"
        risk_file.write_text(json.dumps(data))
        result = invoke(runner, register_path, "risk", "edit", str(risk_file))
        assert result.exit_code == 0
        assert "version 2" in result.output
        assert load_register(register_path).risk("example-1").title == "edited"

    def test_edit_stale_version_exit_1(self, runner, register_path):
        data = risk_to_dict(example_1())
        data["version"] = 5
        risk_file = register_path.parent / "edit.json"
        risk_file.write_text(json.dumps(data))
        result = invoke(runner, register_path, "risk", "edit", str(risk_file))
        assert result.exit_code == 1
        assert "version" in result.output

    def test_rm(self, runner, register_path):
        result = invoke(runner, register_path, "risk", "rm", "example-1")
        assert result.exit_code == 0
        assert len(load_register(register_path).risks) == 1

    def test_rm_unknown_exit_1(self, runner, register_path):
        result = invoke(runner, register_path, "risk", "rm", "ghost")
        assert result.exit_code == 1

    def test_mutations_are_audited(self, runner, register_path):
        invoke(runner, register_path, "risk", "rm", "example-1")
        entry = load_register(register_path).audit_log[-1]
        assert entry.action == "remove_risk"
        assert entry.actor == "analyst"


class TestGoldenOutputs:
    def test_score_example_1(self, runner, register_path):
        result = invoke(runner, register_path, "score", "example-1")
        assert result.exit_code == 0
        assert result.output == (GOLDEN / "score_example_1.txt").read_text()

    def test_score_example_2(self, runner, register_path):
        result = invoke(runner, register_path, "score", "example-2")
        assert result.exit_code == 0
        assert result.output == (GOLDEN / "score_example_2.txt").read_text()

    def test_report_table(self, runner, register_path):
        result = invoke(runner, register_path, "report")
        assert result.exit_code == 0
        assert result.output == (GOLDEN / "report_table.txt").read_text()

    def test_report_markdown(self, runner, register_path):
        result = invoke(runner, register_path, "report", "--format", "markdown")
        assert result.output == (GOLDEN / "report_markdown.md").read_text()

    def test_report_csv(self, runner, register_path):
        result = invoke(runner, register_path, "report", "--format", "csv")
        assert result.output == (GOLDEN / "report.csv").read_text()

    def test_register_file_matches_golden(self, register_path):
        assert register_path.read_text() == (
            GOLDEN / "register.json").read_text()


class TestReportCommand:
    def test_json_matches_shared_serializer(self, runner, register_path,
                                            fixture_doc):
        result = invoke(runner, register_path, "report", "--format", "json")
        assert json.loads(result.output) == json.loads(
            json.dumps(report_json(fixture_doc)))

    def test_out_writes_file(self, runner, register_path, tmp_path):
        out = tmp_path / "report.md"
        result = invoke(runner, register_path, "report", "--format",
                        "markdown", "--out", str(out))
        assert result.exit_code == 0
        assert out.read_text() == (GOLDEN / "report_markdown.md").read_text()

    def test_figures_rendered(self, runner, register_path, tmp_path):
        figures = tmp_path / "figs"
        result = invoke(runner, register_path, "report", "--figures",
                        str(figures))
        assert result.exit_code == 0
        names = sorted(p.name for p in figures.iterdir())
        assert names == ["impact_heatmap.png", "risk_ranking.png"]
        assert all((figures / n).stat().st_size > 0 for n in names)
        assert all((figures / n).read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
                   for n in names)

    def test_score_unknown_risk_exit_1(self, runner, register_path):
        result = invoke(runner, register_path, "score", "ghost")
        assert result.exit_code == 1

    def test_missing_register_exit_3(self, runner, tmp_path):
        result = invoke(runner, tmp_path / "absent.json", "report")
        assert result.exit_code == 3


class TestWhatIfCommand:
    def test_worked_example(self, runner, register_path):
        before = register_path.read_bytes()
        result = invoke(runner, register_path, "whatif", "example-1",
                        "--set", "endusers.psychological=10")
        assert result.exit_code == 0
        assert "Overall impact: 22 -> 17 (-5)" in result.output
        assert "Risk level: Elevated -> Low" in result.output
        assert register_path.read_bytes() == before

    def test_no_overrides_identity(self, runner, register_path):
        result = invoke(runner, register_path, "whatif", "example-1")
        assert result.exit_code == 0
        assert "Overall impact: 22 -> 22 (+0)" in result.output

    def test_bad_area_lists_valid_ones(self, runner, register_path):
        result = invoke(runner, register_path, "whatif", "example-1",
                        "--set", "end_users.wellbeing=10")
        assert result.exit_code == 1
        assert "psychological" in result.output
        assert "privacy" in result.output

    def test_weight_override_colon_syntax(self, runner, register_path):
        result = invoke(runner, register_path, "whatif", "example-1",
                        "--weight", "government:rights=2",
                        "--weight", "government:social=7")
        assert result.exit_code == 0
        assert "Government: 19 -> 20 (+1)" in result.output

    def test_likelihood_override(self, runner, register_path):
        result = invoke(runner, register_path, "whatif", "example-1",
                        "--likelihood", "low")
        assert result.exit_code == 0
        assert "Risk value: 22 -> 2.2" in result.output


class TestUsageErrors:
    def test_unknown_command_exit_2(self, runner, tmp_path):
        result = invoke(runner, tmp_path / "r.json", "frobnicate")
        assert result.exit_code == 2

    def test_bad_format_choice_exit_2(self, runner, register_path):
        result = invoke(runner, register_path, "report", "--format", "xml")
        assert result.exit_code == 2
