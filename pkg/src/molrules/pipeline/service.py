"""HTTP/JSON service over persisted trained tasks.

Endpoints: GET /tasks, GET /tasks/{id}/rules, POST /predict,
POST /synthesize, POST /infer (both queued jobs), GET /jobs/{id}.
Invalid SMILES comes back as 422 with the parser diagnostic; unknown
task ids as 404. If MOLRULES_TOKEN is set, requests must carry it as a
bearer token.
"""

from __future__ import annotations

import itertools
import os
import threading

from fastapi import Depends, FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from ..errors import ConfigError, MolrulesError, OracleError, SmilesParseError
from ..rulekit import merge_rulesets
from ..stats.verdicts import RuleVerdict
from .config import RunConfig
from .runner import (
    TrainedTask,
    explain,
    load_trained,
    run_inference,
    run_synthesis,
    run_train,
    run_validate_rules,
)


class TaskStore:
    """Immutable trained tasks plus a single-writer update lock."""

    def __init__(self, store_dir: str):
        self.store_dir = store_dir
        self.write_lock = threading.Lock()
        self.tasks: dict[str, TrainedTask] = {}
        self.reload()

    def reload(self):
        tasks = {}
        if os.path.isdir(self.store_dir):
            for name in sorted(os.listdir(self.store_dir)):
                task_dir = os.path.join(self.store_dir, name)
                if os.path.exists(os.path.join(task_dir, "model.json")):
                    trained = load_trained(task_dir)
                    tasks[trained.task] = trained
        self.tasks = tasks

    def get(self, task_id: str) -> TrainedTask:
        if task_id not in self.tasks:
            raise HTTPException(status_code=404, detail=f"unknown task {task_id!r}")
        return self.tasks[task_id]


class JobQueue:
    def __init__(self):
        self._lock = threading.Lock()
        self._jobs: dict[str, dict] = {}
        self._counter = itertools.count(1)

    def submit(self, kind: str, target) -> str:
        with self._lock:
            job_id = f"job-{next(self._counter)}"
            self._jobs[job_id] = {"id": job_id, "kind": kind, "status": "queued"}

        def runner():
            self._jobs[job_id]["status"] = "running"
            try:
                result = target()
                self._jobs[job_id].update(status="done", result=result)
            except MolrulesError as exc:
                self._jobs[job_id].update(status="error", error=str(exc))

        thread = threading.Thread(target=runner, daemon=True)
        thread.start()
        return job_id

    def get(self, job_id: str) -> dict:
        if job_id not in self._jobs:
            raise HTTPException(status_code=404, detail=f"unknown job {job_id!r}")
        return self._jobs[job_id]


class PredictRequest(BaseModel):
    smiles: str
    task_id: str
    k: int = Field(default=3, ge=1)
    mode: str = "template"


class JobRequest(BaseModel):
    task_id: str


def _verdict_obj(v: RuleVerdict) -> dict:
    return {
        "p_value": v.test.p_value,
        "statistic": v.test.statistic if v.test.statistic not in (float("inf"), float("-inf")) else None,
        "method": v.test.method,
        "significant": v.significant,
        "literature_supported": v.literature_supported,
        "category": v.category,
    }


def create_app(store_dir: str, require_tasks: bool = True) -> FastAPI:
    store = TaskStore(store_dir)
    if require_tasks and not store.tasks:
        raise ConfigError(f"no trained tasks found under {store_dir!r}")
    jobs = JobQueue()
    app = FastAPI(title="molrules service")
    app.state.store = store
    app.state.jobs = jobs

    async def check_token(request: Request):
        token = os.environ.get("MOLRULES_TOKEN", "")
        if not token:
            return
        header = request.headers.get("authorization", "")
        if header != f"Bearer {token}":
            raise HTTPException(status_code=401, detail="missing or bad bearer token")

    guarded = Depends(check_token)

    @app.get("/tasks", dependencies=[guarded])
    def list_tasks():
        out = []
        for trained in store.tasks.values():
            out.append(
                {
                    "id": trained.task,
                    "kind": trained.kind,
                    "n_rules": len(trained.ruleset),
                    "metrics": trained.metrics,
                }
            )
        return out

    @app.get("/tasks/{task_id}/rules", dependencies=[guarded])
    def task_rules(task_id: str):
        trained = store.get(task_id)
        verdict_by_id = {v.rule_id: v for v in trained.verdicts}
        rules = []
        for j, rule in enumerate(trained.ruleset.rules):
            verdict = verdict_by_id.get(rule.id)
            rules.append(
                {
                    "id": rule.id,
                    "dsl": rule.dsl,
                    "provenance": rule.provenance,
                    "source_text": rule.source_text,
                    "importance": float(trained.importances[j]),
                    "verdict": _verdict_obj(verdict) if verdict else None,
                }
            )
        return {"task_id": task_id, "rules": rules}

    @app.post("/predict", dependencies=[guarded])
    def predict(request: PredictRequest):
        trained = store.get(request.task_id)
        try:
            result = explain(trained, request.smiles, k=request.k, mode=request.mode)
        except SmilesParseError as exc:
            return JSONResponse(
                status_code=422,
                content={
                    "error": str(exc),
                    "position": exc.position,
                    "smiles": request.smiles,
                },
            )
        return {
            "task_id": request.task_id,
            "smiles": request.smiles,
            "prediction": result.prediction,
            "probability": result.probability,
            "contributions": [
                {"rule_id": rid, "dsl": dsl, "value": value, "importance": importance}
                for rid, dsl, value, importance in result.contributions
            ],
            "explanation": result.narrative,
            "generator": result.generator,
            "notice": result.notice,
        }

    def _rerun(task_id: str, which: str):
        trained = store.get(task_id)
        config = trained.config

        def job():
            with store.write_lock:
                if which == "synthesize":
                    ruleset, _ = run_synthesis(config)
                else:
                    ruleset, _ = run_inference(config)
                new_trained = run_train(config, merge_rulesets(config.task, trained.ruleset, ruleset))
                if config.annotations_path:
                    run_validate_rules(config, new_trained)
                store.reload()
                return {"task_id": task_id, "n_rules": len(new_trained.ruleset)}

        return jobs.submit(which, job)

    @app.post("/synthesize", status_code=202, dependencies=[guarded])
    def synthesize(request: JobRequest):
        return {"job_id": _rerun(request.task_id, "synthesize")}

    @app.post("/infer", status_code=202, dependencies=[guarded])
    def infer(request: JobRequest):
        return {"job_id": _rerun(request.task_id, "infer")}

    @app.get("/jobs/{job_id}", dependencies=[guarded])
    def job_status(job_id: str):
        return jobs.get(job_id)

    return app


def serve(store_dir: str, host: str = "127.0.0.1", port: int = 8765):
    import uvicorn

    app = create_app(store_dir)
    uvicorn.run(app, host=host, port=port)
