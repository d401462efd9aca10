import duckdb
import hashlib
import json
import pandas as pd
from dataclasses import asdict
from datetime import datetime
from typing import Optional

# ===============================
# CANONICAL SCHEMA DEFINITION
# ===============================
SCHEMA_DEFINITION = {
    "log_id": "INTEGER PRIMARY KEY",
    "timestamp": "TIMESTAMP",
    "command": "VARCHAR",
    "config_digest": "VARCHAR",
    "rows_emitted": "INTEGER",
    "status": "VARCHAR",
    "summary_value": "DOUBLE",
    "error_message": "VARCHAR",
}


# ===============================
# DATABASE CONNECTION
# ===============================
def get_connection(path: str):
    """Get DuckDB connection to the run ledger"""
    con = duckdb.connect(path)
    con.execute("SET enable_progress_bar=false")
    return con


# ===============================
# INITIALIZE LEDGER
# ===============================
def initialize_ledger(path: str):
    """Create the run_logs table and its id sequence"""
    con = get_connection(path)
    columns_def = ", ".join([f"{col} {dtype}" for col, dtype in SCHEMA_DEFINITION.items()])
    try:
        con.execute(f"CREATE TABLE IF NOT EXISTS run_logs ({columns_def})")
        con.execute("CREATE SEQUENCE IF NOT EXISTS run_log_id_seq START 1")
    finally:
        con.close()


# ===============================
# CONFIG DIGEST
# ===============================
def config_digest(cfg) -> str:
    """
    Stable SHA-256 of a RunConfig

    Arrays and tuples are turned into lists so the digest only depends on
    values; the ledger path itself is excluded.
    """
    fields = asdict(cfg)
    fields.pop("ledger", None)

    def plain(value):
        if hasattr(value, "tolist"):
            return value.tolist()
        if isinstance(value, tuple):
            return list(value)
        return value

    canonical = json.dumps({k: plain(v) for k, v in sorted(fields.items())}, sort_keys=True)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


# ===============================
# RUN LOGGING
# ===============================
def log_run(
    path: str,
    command: str,
    digest: str,
    rows_emitted: int,
    status: str,
    summary_value: Optional[float] = None,
    error: Optional[str] = None,
):
    """Append one run record to the ledger"""
    initialize_ledger(path)
    con = get_connection(path)
    try:
        con.execute("""
            INSERT INTO run_logs
            (log_id, timestamp, command, config_digest, rows_emitted, status, summary_value, error_message)
            VALUES (
                nextval('run_log_id_seq'),
                ?,
                ?,
                ?,
                ?,
                ?,
                ?,
                ?
            )
        """, [datetime.now(), command, digest, rows_emitted, status, summary_value, error])
    finally:
        con.close()


# ===============================
# GET RUN LOGS
# ===============================
def get_run_logs(path: str, limit: int = 10) -> pd.DataFrame:
    """Fetch the most recent run records"""
    con = get_connection(path)
    try:
        df = con.execute(
            "SELECT * FROM run_logs ORDER BY log_id DESC LIMIT ?", [int(limit)]
        ).fetchdf()
    finally:
        con.close()
    return df
