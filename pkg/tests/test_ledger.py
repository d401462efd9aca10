"""
DuckDB run ledger.

Run with:
    pytest tests/test_ledger.py -v
"""

import app
from data.config_loader import build_run_config, merge_sources
from db.db_manager import SCHEMA_DEFINITION, config_digest, get_run_logs, log_run


class TestLedger:
    def test_log_and_read_back(self, tmp_path):
        path = str(tmp_path / "runs.duckdb")
        log_run(path, "certify", "abc", 1, "SUCCESS", 0.0)
        log_run(path, "gisin", "def", 40, "SUCCESS", 0.25)

        logs = get_run_logs(path)
        assert list(logs.columns) == list(SCHEMA_DEFINITION)
        # newest first
        assert logs["command"].tolist() == ["gisin", "certify"]
        assert logs["rows_emitted"].tolist() == [40, 1]

    def test_limit(self, tmp_path):
        path = str(tmp_path / "runs.duckdb")
        for k in range(5):
            log_run(path, "evolve", str(k), k, "SUCCESS")
        assert len(get_run_logs(path, limit=2)) == 2

    def test_digest_ignores_ledger_path(self):
        a = build_run_config("gisin", merge_sources({"ledger": "a.duckdb"}))
        b = build_run_config("gisin", merge_sources({"ledger": "b.duckdb"}))
        c = build_run_config("gisin", merge_sources({"seed": "8"}))
        assert config_digest(a) == config_digest(b)
        assert config_digest(a) != config_digest(c)

    def test_cli_records_runs(self, tmp_path, capsys):
        path = str(tmp_path / "runs.duckdb")
        assert app.main(["evolve", "--xi", "0,0,0", "--t", "1", "--ledger", path]) == 0
        assert app.main(["certify", "--flow", "weinberg", "--samples", "50", "--tol", "1e-3", "--ledger", path]) == 3
        assert app.main(["evolve", "--xi", "0,0,2", "--ledger", path]) == 2
        capsys.readouterr()

        logs = get_run_logs(path)
        assert logs["status"].tolist() == ["FAILED", "VIOLATIONS", "SUCCESS"]
        assert "norm" in logs["error_message"].iloc[0]
        assert logs["summary_value"].iloc[1] > 0
