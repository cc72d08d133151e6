"""SQLite-backed persistence: datasets, jobs, and the job event log.

Dataset files are content-addressed (id = SHA-256 prefix of the bytes), so
re-uploading a file is idempotent. Job rows move strictly through
queued -> running -> done|failed; every transition lands in ``job_events``,
which the invariants tests audit. A single connection guarded by a lock
serves all worker threads.
"""
from __future__ import annotations

import hashlib
import json
import sqlite3
import threading
import time
import uuid
from pathlib import Path

VALID_TRANSITIONS = {
    (None, "queued"),
    ("queued", "running"),
    ("running", "done"),
    ("running", "failed"),
    ("running", "queued"),  # crash recovery re-queues interrupted jobs
}

_SCHEMA = """
CREATE TABLE IF NOT EXISTS datasets (
    id TEXT PRIMARY KEY,
    filename TEXT NOT NULL,
    source TEXT NOT NULL,
    row_count INTEGER NOT NULL,
    capabilities TEXT NOT NULL,
    path TEXT NOT NULL,
    created_at REAL NOT NULL
);
CREATE TABLE IF NOT EXISTS jobs (
    id TEXT PRIMARY KEY,
    dataset_id TEXT NOT NULL,
    analysis TEXT NOT NULL,
    params TEXT NOT NULL,
    state TEXT NOT NULL,
    submitted_at REAL NOT NULL,
    started_at REAL,
    finished_at REAL,
    error TEXT,
    result_path TEXT
);
CREATE TABLE IF NOT EXISTS job_events (
    seq INTEGER PRIMARY KEY AUTOINCREMENT,
    job_id TEXT NOT NULL,
    from_state TEXT,
    to_state TEXT NOT NULL,
    at REAL NOT NULL
);
"""


class StateTransitionError(RuntimeError):
    pass


class Store:
    def __init__(self, data_dir: Path):
        self.data_dir = Path(data_dir)
        self.datasets_dir = self.data_dir / "datasets"
        self.results_dir = self.data_dir / "results"
        self.datasets_dir.mkdir(parents=True, exist_ok=True)
        self.results_dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._conn = sqlite3.connect(self.data_dir / "bibliotext.db", check_same_thread=False)
        self._conn.row_factory = sqlite3.Row
        with self._lock:
            self._conn.executescript(_SCHEMA)
            self._conn.commit()

    def close(self) -> None:
        with self._lock:
            self._conn.close()

    # --- datasets ---------------------------------------------------------

    def add_dataset(self, raw: bytes, filename: str, source: str, row_count: int, capabilities: dict) -> str:
        dataset_id = hashlib.sha256(raw).hexdigest()[:16]
        path = self.datasets_dir / dataset_id
        path.write_bytes(raw)
        with self._lock:
            self._conn.execute(
                "INSERT OR REPLACE INTO datasets VALUES (?,?,?,?,?,?,?)",
                (dataset_id, filename, source, row_count, json.dumps(capabilities), str(path), time.time()),
            )
            self._conn.commit()
        return dataset_id

    def get_dataset(self, dataset_id: str) -> dict | None:
        with self._lock:
            row = self._conn.execute("SELECT * FROM datasets WHERE id=?", (dataset_id,)).fetchone()
        return dict(row) if row else None

    def dataset_bytes(self, dataset_id: str) -> bytes:
        meta = self.get_dataset(dataset_id)
        if meta is None:
            raise KeyError(dataset_id)
        return Path(meta["path"]).read_bytes()

    def delete_dataset(self, dataset_id: str) -> bool:
        meta = self.get_dataset(dataset_id)
        if meta is None:
            return False
        with self._lock:
            self._conn.execute("DELETE FROM datasets WHERE id=?", (dataset_id,))
            self._conn.commit()
        Path(meta["path"]).unlink(missing_ok=True)
        return True

    # --- jobs ---------------------------------------------------------------

    def _record_event(self, job_id: str, from_state: str | None, to_state: str) -> None:
        if (from_state, to_state) not in VALID_TRANSITIONS:
            raise StateTransitionError(f"{from_state} -> {to_state}")
        self._conn.execute(
            "INSERT INTO job_events (job_id, from_state, to_state, at) VALUES (?,?,?,?)",
            (job_id, from_state, to_state, time.time()),
        )

    def create_job(self, dataset_id: str, analysis: str, params: dict) -> str:
        job_id = uuid.uuid4().hex
        with self._lock:
            self._conn.execute(
                "INSERT INTO jobs (id, dataset_id, analysis, params, state, submitted_at) VALUES (?,?,?,?,?,?)",
                (job_id, dataset_id, analysis, json.dumps(params), "queued", time.time()),
            )
            self._record_event(job_id, None, "queued")
            self._conn.commit()
        return job_id

    def _transition(self, job_id: str, from_state: str, to_state: str, **updates) -> None:
        sets = ", ".join(f"{k}=?" for k in updates)
        sql = f"UPDATE jobs SET state=?{', ' + sets if sets else ''} WHERE id=? AND state=?"
        with self._lock:
            cur = self._conn.execute(sql, (to_state, *updates.values(), job_id, from_state))
            if cur.rowcount != 1:
                self._conn.rollback()
                raise StateTransitionError(f"job {job_id}: expected state {from_state}")
            self._record_event(job_id, from_state, to_state)
            self._conn.commit()

    def mark_running(self, job_id: str) -> None:
        self._transition(job_id, "queued", "running", started_at=time.time())

    def mark_done(self, job_id: str, result_path: str) -> None:
        self._transition(job_id, "running", "done", finished_at=time.time(), result_path=result_path)

    def mark_failed(self, job_id: str, error: str) -> None:
        self._transition(job_id, "running", "failed", finished_at=time.time(), error=error)

    def requeue_running(self) -> list[str]:
        """Crash recovery: every 'running' job goes back to the queue."""
        with self._lock:
            rows = self._conn.execute(
                "SELECT id FROM jobs WHERE state='running' ORDER BY submitted_at"
            ).fetchall()
            for row in rows:
                self._conn.execute(
                    "UPDATE jobs SET state='queued', started_at=NULL WHERE id=?", (row["id"],)
                )
                self._record_event(row["id"], "running", "queued")
            self._conn.commit()
        return [row["id"] for row in rows]

    def queued_jobs(self) -> list[str]:
        with self._lock:
            rows = self._conn.execute(
                "SELECT id FROM jobs WHERE state='queued' ORDER BY submitted_at"
            ).fetchall()
        return [row["id"] for row in rows]

    def get_job(self, job_id: str) -> dict | None:
        with self._lock:
            row = self._conn.execute("SELECT * FROM jobs WHERE id=?", (job_id,)).fetchone()
        if row is None:
            return None
        job = dict(row)
        job["params"] = json.loads(job["params"])
        return job

    def job_events(self, job_id: str) -> list[tuple[str | None, str]]:
        with self._lock:
            rows = self._conn.execute(
                "SELECT from_state, to_state FROM job_events WHERE job_id=? ORDER BY seq",
                (job_id,),
            ).fetchall()
        return [(row["from_state"], row["to_state"]) for row in rows]

    def result_dir(self, job_id: str) -> Path:
        path = self.results_dir / job_id
        path.mkdir(parents=True, exist_ok=True)
        return path
