import json
from importlib import resources

import pytest
import yaml
from fastapi.testclient import TestClient

from tokenlab.cli import main
from tokenlab.service import create_app

FIXTURES = resources.files("tokenlab.fixtures")


def fixture_path(name: str) -> str:
    return str(FIXTURES.joinpath(name))


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestValidateCommand:
    def test_valid_spec_exit_0(self, capsys):
        code, out, _ = run_cli(capsys, "validate", fixture_path("currynomics.yaml"))
        assert code == 0
        assert "valid" in out

    def test_invalid_spec_exit_1(self, capsys, tmp_path):
        doc = yaml.safe_load(FIXTURES.joinpath("currynomics.yaml").read_text())
        doc["tokenomics"]["tokens"][1]["distribution"][0]["share"] = 0.01
        bad = tmp_path / "bad.yaml"
        bad.write_text(yaml.safe_dump(doc))
        code, out, _ = run_cli(capsys, "validate", str(bad), "--format", "json")
        assert code == 1
        payload = json.loads(out)
        assert payload["valid"] is False

    def test_schema_error_exit_1(self, capsys, tmp_path):
        bad = tmp_path / "broken.yaml"
        bad.write_text("name: x\n")
        code, _, err = run_cli(capsys, "validate", str(bad))
        assert code == 1
        assert "schema" in err

    def test_missing_file_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "validate", "/nonexistent.yaml")
        assert code == 2
        assert "no such file" in err

    def test_bad_flags_exit_2(self, capsys):
        code, _, _ = run_cli(capsys, "validate")
        assert code == 2


class TestMetricsCommand:
    def test_known_snapshot(self, capsys, tmp_path):
        snap = tmp_path / "snap.csv"
        snap.write_text("entity,weight\na,40\nb,30\nc,20\nd,10\n")
        code, out, _ = run_cli(capsys, "metrics", str(snap), "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["nakamoto"] == 2

    def test_text_format(self, capsys):
        code, out, _ = run_cli(capsys, "metrics", fixture_path("curve_voting_power.csv"))
        assert code == 0
        assert "nakamoto: 23" in out


class TestSimulateCommand:
    def test_preset_with_outputs(self, capsys, tmp_path):
        out_json = tmp_path / "report.json"
        out_csv = tmp_path / "report.csv"
        code, out, _ = run_cli(
            capsys,
            "simulate",
            "--preset", "capture",
            "--epochs", "3",
            "--out", str(out_json),
            "--csv", str(out_csv),
            "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["summary"]["epochs"] == 3
        written = json.loads(out_json.read_text())
        assert written == payload
        lines = out_csv.read_text().strip().split("\n")
        assert len(lines) == 4

    def test_scenario_file(self, capsys, tmp_path):
        scenario = {
            "name": "cli-run",
            "spec": "quadratic_demo",
            "epochs": 3,
            "seed": 1,
            "agents": [
                {"name": "m", "category": "community", "population": 5,
                 "balance": {"kind": "fixed", "value": 10}}
            ],
        }
        path = tmp_path / "scenario.yaml"
        path.write_text(yaml.safe_dump(scenario))
        code, out, _ = run_cli(capsys, "simulate", str(path))
        assert code == 0
        assert "scenario: cli-run" in out

    def test_scenario_and_preset_conflict(self, capsys, tmp_path):
        path = tmp_path / "s.yaml"
        path.write_text("name: x\n")
        code, _, err = run_cli(capsys, "simulate", str(path), "--preset", "capture")
        assert code == 2

    def test_invalid_spec_exit_1(self, capsys, tmp_path):
        doc = yaml.safe_load(FIXTURES.joinpath("uniswap.yaml").read_text())
        doc["tokenomics"]["tokens"][0]["distribution"][0]["share"] = 0.99
        spec_file = tmp_path / "broken_spec.yaml"
        spec_file.write_text(yaml.safe_dump(doc))
        scenario = {
            "name": "x", "epochs": 2, "seed": 1,
            "agents": [{"name": "a", "category": "users", "population": 2,
                        "balance": {"kind": "fixed", "value": 1}}],
        }
        path = tmp_path / "scenario.yaml"
        path.write_text(yaml.safe_dump(scenario))
        code, out, _ = run_cli(
            capsys, "simulate", str(path), "--spec", str(spec_file), "--format", "json"
        )
        assert code == 1
        assert json.loads(out)["valid"] is False


class TestCompareCommand:
    def test_text_table(self, capsys):
        code, out, _ = run_cli(
            capsys, "compare", fixture_path("uniswap.yaml"), fixture_path("curve.yaml")
        )
        assert code == 0
        assert "1-Token-1-Vote" in out
        assert "time-weighted vote-escrow" in out


class TestRecommendCommand:
    def test_selection_narrative(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "recommend",
            "--require", "accountability=2", "security=1",
            "--prefer", "simplicity",
            "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["candidates"][0] == "conviction"

    def test_unknown_property_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "recommend", "--require", "speed=1")
        assert code == 2
        assert "unknown property" in err

    def test_bad_level_exit_2(self, capsys):
        code, _, _ = run_cli(capsys, "recommend", "--require", "security=high")
        assert code == 2


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


class TestParity:
    """CLI JSON output and HTTP responses are structurally identical."""

    def test_validate_parity(self, capsys, client):
        document = FIXTURES.joinpath("currynomics.yaml").read_text()
        code, out, _ = run_cli(
            capsys, "validate", fixture_path("currynomics.yaml"), "--format", "json"
        )
        http = client.post("/api/v1/validate", json={"document": document}).json()
        assert json.loads(out) == http

    def test_metrics_parity(self, capsys, client):
        csv_text = FIXTURES.joinpath("curve_voting_power.csv").read_text()
        code, out, _ = run_cli(
            capsys, "metrics", fixture_path("curve_voting_power.csv"), "--format", "json"
        )
        http = client.post("/api/v1/metrics", json={"csv": csv_text}).json()
        assert json.loads(out) == http

    def test_recommend_parity(self, capsys, client):
        code, out, _ = run_cli(
            capsys,
            "recommend",
            "--require", "accountability=2", "security=1",
            "--prefer", "simplicity",
            "--format", "json",
        )
        http = client.post(
            "/api/v1/recommend",
            json={"require": {"accountability": 2, "security": 1}, "prefer": ["simplicity"]},
        ).json()
        assert json.loads(out) == http

    def test_matrix_parity(self, capsys, client):
        code, out, _ = run_cli(capsys, "matrix", "--format", "json")
        assert json.loads(out) == client.get("/api/v1/matrix").json()

    def test_simulate_parity(self, capsys, client):
        code, out, _ = run_cli(
            capsys, "simulate", "--preset", "sybil", "--epochs", "3", "--format", "json"
        )
        http = client.post(
            "/api/v1/simulate", json={"preset": "sybil", "epochs": 3}
        ).json()
        assert json.loads(out) == http
