import json

import pytest

from porolab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestExitCodes:
    def test_certified_is_zero(self, capsys):
        code, out, _ = run_cli(
            capsys, "check", "--family", "thickplus3", "--M", "0", "--K", "3", "--D", "10"
        )
        assert code == 0
        assert json.loads(out)["result"]["outcome"] == "certified"

    def test_refuted_is_one(self, capsys):
        code, out, _ = run_cli(
            capsys, "check", "--family", "en3", "--M", "0", "--K", "2", "--D", "6"
        )
        assert code == 1
        assert json.loads(out)["result"]["counterexample"] == "0"

    def test_unknown_preset_is_two(self, capsys):
        code, _, err = run_cli(capsys, "check", "--family", "mystery", "--K", "2", "--D", "6")
        assert code == 2
        assert "mystery" in err

    def test_budget_exhaustion_is_three(self, capsys):
        code, _, err = run_cli(
            capsys, "check", "--family", "en3", "--K", "2", "--D", "10", "--budget", "100"
        )
        assert code == 3
        assert "DepthTooLarge" in err

    def test_env_budget_override(self, capsys, monkeypatch):
        monkeypatch.setenv("POROLAB_BUDGET", "50")
        code, _, _ = run_cli(capsys, "check", "--family", "en3", "--K", "2", "--D", "8")
        assert code == 3

    def test_usage_error_is_two(self):
        with pytest.raises(SystemExit) as err:
            main(["check", "--family", "en3"])  # missing required K and D
        assert err.value.code == 2

    def test_witness_sp_without_budget_is_two(self, capsys):
        code, _, err = run_cli(capsys, "witness", "--theorem", "sp")
        assert code == 2
        assert "--N" in err

    def test_invalid_model_value_is_two(self, capsys):
        code, _, _ = run_cli(capsys, "check", "--family", "en3", "--K", "0", "--D", "6")
        assert code == 2

    def test_witness_failure_run_is_one(self, capsys):
        code, out, _ = run_cli(
            capsys, "witness", "--theorem", "summable", "--weights", "constant"
        )
        assert code == 1
        assert json.loads(out)["result"]["error"] == "NoValidCutPoints"

    def test_upper_without_any_hole_depth_is_one(self, capsys):
        # one extra bit never completes a 3-term progression from zeros
        code, out, _ = run_cli(
            capsys, "upper", "--family", "en3", "--K", "1", "--D", "4"
        )
        assert code == 1
        assert json.loads(out)["result"]["hole_depths"] == []

    def test_window_wider_than_horizon_is_two(self, capsys):
        code, _, err = run_cli(
            capsys,
            "families", "--elements", "0,1", "--horizon", "3", "--windows", "3",
        )
        assert code == 2
        assert "WindowExceedsHorizon" in err


class TestReports:
    def test_report_is_self_describing(self, capsys):
        _, out, _ = run_cli(
            capsys, "check", "--family", "en3", "--K", "3", "--D", "6", "--seed", "7"
        )
        body = json.loads(out)
        assert body["schema"] == "1"
        assert body["config"]["family"] == {"variant": "en", "n": 3}
        assert body["config"]["seed"] == 7
        assert body["config"]["budget"] == 1 << 24
        assert {"M", "K", "D", "jobs"} <= set(body["config"])

    def test_inline_family_json(self, capsys):
        family = '{"variant": "shifted", "base": {"variant": "thickplus", "N": 2}, "F": [0]}'
        code, out, _ = run_cli(capsys, "check", "--family", family, "--K", "2", "--D", "6")
        assert code == 0
        assert json.loads(out)["config"]["family"]["variant"] == "shifted"

    def test_malformed_family_json_is_two(self, capsys):
        code, _, err = run_cli(capsys, "check", "--family", "{oops", "--K", "2", "--D", "6")
        assert code == 2
        assert "family JSON" in err

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out, _ = run_cli(
            capsys,
            "nporous", "--family", "en3", "--n", "3", "--D", "6",
            "--output", str(target),
        )
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text())["result"]["outcome"] == "certified"

    def test_pretty_flag(self, capsys):
        _, out, _ = run_cli(
            capsys, "upper", "--family", "psquares", "--K", "1", "--D", "10", "--pretty"
        )
        assert out.count("\n") > 1
        assert json.loads(out)["result"]["hole_depths"] == [1, 2, 4, 5, 9]

    def test_newline_terminated_single_document(self, capsys):
        _, out, _ = run_cli(capsys, "families", "--elements", "1,3,5", "--horizon", "6")
        assert out.endswith("\n") and out.count("\n") == 1

    def test_families_statistics(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "families", "--elements", "0,2,4,6,20", "--horizon", "21",
            "--p", "2", "--L", "7", "--weights", "harmonic",
        )
        assert code == 0
        body = json.loads(out)
        assert body["result"]["block_witness"]["span"] == [0, 7]
        assert body["result"]["progressions"]["3"] == [0, 2]
        assert "weight_sum" in body["result"]

    def test_repeated_runs_are_byte_identical(self, capsys):
        argv = ["witness", "--theorem", "tryba", "--stages", "6"]
        first = run_cli(capsys, *argv)
        second = run_cli(capsys, *argv)
        assert first == second
        assert first[0] == 0


class TestRemoteMode:
    def test_server_flag_posts_the_same_request(self, capsys, monkeypatch):
        import httpx
        from fastapi.testclient import TestClient

        from porolab.service import app

        def post(url, json=None, timeout=None):
            with TestClient(app) as client:
                return client.post(url.replace("http://svc", ""), json=json)

        monkeypatch.setattr(httpx, "post", post)
        code, remote_out, _ = run_cli(
            capsys,
            "check", "--family", "en3", "--K", "3", "--D", "6",
            "--server", "http://svc",
        )
        assert code == 0
        local_code, local_out, _ = run_cli(
            capsys, "check", "--family", "en3", "--K", "3", "--D", "6"
        )
        assert local_code == 0
        assert remote_out == local_out
