"""Bounded worker pool executing analysis jobs FIFO.

Each job runs its analysis single-threaded (determinism); parallelism
comes from running independent jobs on separate threads. Results are
written as files first and only then does the job flip to done, so a crash
between the two leaves a re-runnable job rather than a dangling pointer.
"""
from __future__ import annotations

import queue
import threading
import traceback

from ..analyses import dump_json, run_analysis
from ..ingest import SourceKind, parse_dataset
from .store import Store

_STOP = object()


class WorkerPool:
    def __init__(self, store: Store, workers: int):
        self.store = store
        self.queue: "queue.Queue" = queue.Queue()
        self.threads = [
            threading.Thread(target=self._run, name=f"bibliotext-worker-{i}", daemon=True)
            for i in range(max(1, workers))
        ]

    def start(self) -> None:
        self.store.requeue_running()  # interrupted jobs rejoin the queue
        for job_id in self.store.queued_jobs():
            self.queue.put(job_id)
        for t in self.threads:
            t.start()

    def submit(self, job_id: str) -> None:
        self.queue.put(job_id)

    def stop(self) -> None:
        for _ in self.threads:
            self.queue.put(_STOP)
        for t in self.threads:
            t.join(timeout=30)

    def join_idle(self) -> None:
        """Block until every queued item has been processed (tests)."""
        self.queue.join()

    def _run(self) -> None:
        while True:
            item = self.queue.get()
            if item is _STOP:
                self.queue.task_done()
                return
            try:
                self._execute(item)
            finally:
                self.queue.task_done()

    def _execute(self, job_id: str) -> None:
        job = self.store.get_job(job_id)
        if job is None or job["state"] != "queued":
            return
        self.store.mark_running(job_id)
        try:
            raw = self.store.dataset_bytes(job["dataset_id"])
            meta = self.store.get_dataset(job["dataset_id"])
            ds = parse_dataset(raw, SourceKind(meta["source"]))
            output = run_analysis(ds, job["analysis"], job["params"])

            result_dir = self.store.result_dir(job_id)
            (result_dir / "result.json").write_bytes(dump_json(output.result))
            for name, content in output.csv_artifacts.items():
                (result_dir / name).write_text(content, encoding="utf-8")
            self.store.mark_done(job_id, str(result_dir / "result.json"))
        except Exception as exc:  # noqa: BLE001 - job errors become job state
            message = f"{type(exc).__name__}: {exc}"
            traceback.print_exc()
            self.store.mark_failed(job_id, message)
