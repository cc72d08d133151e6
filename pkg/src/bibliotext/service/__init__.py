"""HTTP API: dataset upload, capability checks, analysis jobs, results.

Endpoints:
    POST   /datasets                  upload, parse, report capabilities
    GET    /datasets/{id}             metadata
    GET    /datasets/{id}/capabilities
    DELETE /datasets/{id}
    POST   /jobs                      submit an analysis job
    GET    /jobs/{id}                 job state
    GET    /jobs/{id}/result          result JSON (409 until done)
    GET    /jobs/{id}/result.csv      primary CSV artifact

Run with: ``bibliotext serve`` or
``uvicorn --factory bibliotext.service:create_app``. Configuration comes
from BIBLIOTEXT_* environment variables (data dir, port, worker count,
upload limit, CORS origin).
"""
from __future__ import annotations

import json
from contextlib import asynccontextmanager
from pathlib import Path

from fastapi import FastAPI, HTTPException, Request, UploadFile
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse, Response
from pydantic import BaseModel

from ..analyses import CAPABILITY_FOR, validate_params
from ..capability import check_capabilities
from ..errors import (
    EmptyFile,
    IngestError,
    InvalidParams,
    MalformedRow,
    UndecodableFile,
)
from ..ingest import detect_source, parse_dataset
from .config import ServiceConfig
from .store import Store
from .worker import WorkerPool


class JobRequest(BaseModel):
    dataset_id: str
    analysis: str
    params: dict = {}


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig.from_env()
    store = Store(config.data_dir)
    pool = WorkerPool(store, config.workers)

    @asynccontextmanager
    async def lifespan(_app: FastAPI):
        pool.start()
        yield
        pool.stop()
        store.close()

    app = FastAPI(title="bibliotext", version="0.1.0", lifespan=lifespan)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[config.cors_origin] if config.cors_origin != "*" else ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.store = store
    app.state.pool = pool
    app.state.config = config

    @app.post("/datasets", status_code=201)
    async def upload_dataset(file: UploadFile, request: Request):
        raw = await file.read()
        if len(raw) > config.upload_limit_bytes:
            raise HTTPException(413, detail=f"file exceeds {config.upload_limit_bytes} bytes")
        try:
            kind = detect_source(raw, file.filename or "")
            ds = parse_dataset(raw, kind)
        except UndecodableFile as exc:
            raise HTTPException(415, detail=str(exc))
        except MalformedRow as exc:
            raise HTTPException(422, detail={
                "error": "MalformedRow",
                "rows": [{"row": r, "expected": e, "got": g} for r, e, g in exc.rows],
            })
        except (EmptyFile, IngestError) as exc:
            raise HTTPException(422, detail={"error": type(exc).__name__, "message": str(exc)})

        report = check_capabilities(ds)
        dataset_id = store.add_dataset(
            raw, file.filename or "upload", kind.value, ds.row_count, report.to_json()
        )
        return {
            "dataset_id": dataset_id,
            "source": kind.value,
            "row_count": ds.row_count,
            "capabilities": report.to_json(),
        }

    def _dataset_or_404(dataset_id: str) -> dict:
        meta = store.get_dataset(dataset_id)
        if meta is None:
            raise HTTPException(404, detail="unknown dataset")
        return meta

    @app.get("/datasets/{dataset_id}")
    def get_dataset(dataset_id: str):
        meta = _dataset_or_404(dataset_id)
        return {
            "dataset_id": meta["id"],
            "filename": meta["filename"],
            "source": meta["source"],
            "row_count": meta["row_count"],
            "created_at": meta["created_at"],
        }

    @app.get("/datasets/{dataset_id}/capabilities")
    def get_capabilities(dataset_id: str):
        meta = _dataset_or_404(dataset_id)
        return json.loads(meta["capabilities"])

    @app.delete("/datasets/{dataset_id}", status_code=204)
    def delete_dataset(dataset_id: str):
        if not store.delete_dataset(dataset_id):
            raise HTTPException(404, detail="unknown dataset")
        return Response(status_code=204)

    @app.post("/jobs", status_code=202)
    def submit_job(req: JobRequest):
        meta = _dataset_or_404(req.dataset_id)
        if req.analysis not in CAPABILITY_FOR:
            raise HTTPException(400, detail=f"unknown analysis: {req.analysis}")
        capabilities = json.loads(meta["capabilities"])
        gate = capabilities[CAPABILITY_FOR[req.analysis]]
        if not gate["eligible"]:
            raise HTTPException(409, detail={
                "error": "NotEligible",
                "analysis": req.analysis,
                "missing_fields": gate["missing_fields"],
            })
        try:
            validate_params(req.analysis, req.params)
        except InvalidParams as exc:
            raise HTTPException(400, detail={"error": "InvalidParams", "message": str(exc)})
        job_id = store.create_job(req.dataset_id, req.analysis, req.params)
        pool.submit(job_id)
        return {"job_id": job_id}

    def _job_or_404(job_id: str) -> dict:
        job = store.get_job(job_id)
        if job is None:
            raise HTTPException(404, detail="unknown job")
        return job

    @app.get("/jobs/{job_id}")
    def get_job(job_id: str):
        job = _job_or_404(job_id)
        return {
            "job_id": job["id"],
            "dataset_id": job["dataset_id"],
            "analysis": job["analysis"],
            "params": job["params"],
            "state": job["state"],
            "submitted_at": job["submitted_at"],
            "started_at": job["started_at"],
            "finished_at": job["finished_at"],
            "error": job["error"],
        }

    def _done_job(job_id: str) -> dict:
        job = _job_or_404(job_id)
        if job["state"] != "done":
            raise HTTPException(409, detail={
                "error": "ResultNotReady",
                "state": job["state"],
                "message": job["error"] or f"job is {job['state']}",
            })
        return job

    @app.get("/jobs/{job_id}/result")
    def get_result(job_id: str):
        job = _done_job(job_id)
        payload = Path(job["result_path"]).read_bytes()
        return Response(content=payload, media_type="application/json")

    @app.get("/jobs/{job_id}/result.csv")
    def get_result_csv(job_id: str):
        job = _done_job(job_id)
        csv_path = Path(job["result_path"]).parent / "result.csv"
        if not csv_path.exists():
            raise HTTPException(404, detail="no CSV artifact for this job")
        return PlainTextResponse(csv_path.read_text("utf-8"), media_type="text/csv")

    return app
