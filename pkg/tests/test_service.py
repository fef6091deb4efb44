import json
import os
import time

import pytest
from fastapi.testclient import TestClient

from molrules.errors import ConfigError
from molrules.pipeline import load_dataset, make_oracle, make_split, run_inference, run_synthesis, run_train, run_validate_rules
from molrules.pipeline.service import create_app
from molrules.rulekit import merge_rulesets


@pytest.fixture(scope="module")
def service_store(tmp_path_factory):
    from conftest import fixture_config

    out = tmp_path_factory.mktemp("store")
    config = fixture_config(str(out))
    dataset = load_dataset(config)
    split = make_split(config, dataset)
    oracle = make_oracle(config)
    syn, _ = run_synthesis(config, oracle)
    inf, _ = run_inference(config, oracle, dataset, split)
    trained = run_train(config, merge_rulesets(config.task, syn, inf), dataset, split)
    run_validate_rules(config, trained, dataset)
    return str(out)


@pytest.fixture(scope="module")
def client(service_store):
    return TestClient(create_app(service_store))


class TestTasksEndpoint:
    def test_lists_fixture_task(self, client):
        response = client.get("/tasks")
        assert response.status_code == 200
        tasks = response.json()
        assert any(t["id"] == "bbbp" for t in tasks)
        entry = next(t for t in tasks if t["id"] == "bbbp")
        assert entry["kind"] == "classification"
        assert entry["n_rules"] > 0
        assert "test" in entry["metrics"]

    def test_rules_with_verdicts(self, client):
        response = client.get("/tasks/bbbp/rules")
        assert response.status_code == 200
        rules = response.json()["rules"]
        assert len(rules) >= 5
        assert {r["provenance"] for r in rules} == {"synthesized", "inferred"}
        categorized = [r for r in rules if r["verdict"]]
        assert categorized
        assert {"p_value", "category", "significant"} <= set(categorized[0]["verdict"])

    def test_unknown_task_404(self, client):
        assert client.get("/tasks/nope/rules").status_code == 404


class TestPredictEndpoint:
    def test_predict_ok(self, client):
        response = client.post("/predict", json={"smiles": "CCO", "task_id": "bbbp", "k": 3})
        assert response.status_code == 200
        body = response.json()
        assert set(body) >= {"prediction", "probability", "contributions", "explanation"}
        assert len(body["contributions"]) == 3
        assert 0.0 <= body["probability"] <= 1.0
        assert body["prediction"] in (0.0, 1.0)

    def test_predict_matches_library(self, client, service_store):
        from molrules.molgraph import parse_smiles
        from molrules.pipeline import load_trained
        from molrules.rulekit import featurize

        trained = load_trained(os.path.join(service_store, "bbbp"))
        x = featurize(trained.ruleset, [parse_smiles("CCO")]).values
        expected = float(trained.model.predict_proba(x)[0, 1])
        body = client.post("/predict", json={"smiles": "CCO", "task_id": "bbbp"}).json()
        assert body["probability"] == pytest.approx(expected, abs=0)

    def test_invalid_smiles_422(self, client):
        response = client.post("/predict", json={"smiles": "C1CC", "task_id": "bbbp"})
        assert response.status_code == 422
        body = response.json()
        assert "unclosed ring" in body["error"]
        assert isinstance(body["position"], int)

    def test_unknown_task_404(self, client):
        assert client.post("/predict", json={"smiles": "C", "task_id": "zzz"}).status_code == 404


class TestJobs:
    def _wait(self, client, job_id, timeout=30.0):
        deadline = time.time() + timeout
        while time.time() < deadline:
            body = client.get(f"/jobs/{job_id}").json()
            if body["status"] in ("done", "error"):
                return body
            time.sleep(0.05)
        raise AssertionError("job did not finish")

    def test_synthesize_job(self, client):
        response = client.post("/synthesize", json={"task_id": "bbbp"})
        assert response.status_code == 202
        job = self._wait(client, response.json()["job_id"])
        assert job["status"] == "done"
        assert job["result"]["task_id"] == "bbbp"

    def test_infer_job(self, client):
        response = client.post("/infer", json={"task_id": "bbbp"})
        assert response.status_code == 202
        job = self._wait(client, response.json()["job_id"])
        assert job["status"] == "done"

    def test_unknown_job_404(self, client):
        assert client.get("/jobs/job-999999").status_code == 404


class TestServiceConfig:
    def test_empty_store_rejected(self, tmp_path):
        with pytest.raises(ConfigError, match="no trained tasks"):
            create_app(str(tmp_path))

    def test_token_guard(self, service_store, monkeypatch):
        monkeypatch.setenv("MOLRULES_TOKEN", "sesame")
        guarded = TestClient(create_app(service_store))
        assert guarded.get("/tasks").status_code == 401
        ok = guarded.get("/tasks", headers={"Authorization": "Bearer sesame"})
        assert ok.status_code == 200
