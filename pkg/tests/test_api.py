import pytest
from fastapi.testclient import TestClient

from app.core.settings import settings
from main import app

client = TestClient(app)


def test_classify_cgmm():
    response = client.post(
        "/theory/classify",
        json={"params": {"model": "cgmm", "n": 1000, "d": 1000, "rho": 0.99, "R": 100.0}},
    )
    assert response.status_code == 200
    body = response.json()
    assert body["matching"] == "achievable"
    assert body["recovery_single"] == "possible"
    assert body["recovery_pair"] == "possible"
    assert "high_dim" in body["flags"]


def test_classify_ccsbm_has_edge_flags():
    response = client.post(
        "/theory/classify",
        json={"params": {"model": "ccsbm", "n": 500, "p": 0.05, "q": 0.01, "s": 0.8, "R": 2.0, "d": 0, "rho": 0.0}},
    )
    assert response.status_code == 200
    assert "edge_dominant" in response.json()["flags"]


def test_classify_rejects_bad_eps():
    response = client.post(
        "/theory/classify",
        json={"params": {"model": "cgmm", "n": 100, "d": 10, "rho": 0.5, "R": 1.0}, "eps": 1.5},
    )
    assert response.status_code == 422


def test_classify_maps_domain_errors_to_422():
    response = client.post(
        "/theory/classify",
        json={"params": {"model": "cgmm", "n": 1, "d": 10, "rho": 0.5, "R": 1.0}},
    )
    assert response.status_code == 422
    assert "n >= 2" in response.json()["detail"]


def test_phase():
    response = client.post(
        "/theory/phase",
        json={
            "classifier": "cgmm-match",
            "grid": {
                "base": {"n": 500, "d": 400},
                "x": {"name": "rho", "start": 0.1, "stop": 0.9, "num": 5},
                "y": {"name": "R", "start": 1.0, "stop": 10.0, "num": 2},
            },
        },
    )
    assert response.status_code == 200
    body = response.json()
    assert (body["x_name"], body["y_name"]) == ("rho", "R")
    assert len(body["cells"]) == 10
    assert [cell["x"] for cell in body["cells"][:5]] == pytest.approx([0.1, 0.3, 0.5, 0.7, 0.9])


def test_trial():
    response = client.post(
        "/experiments/trial",
        json={
            "params": {"model": "cgmm", "n": 20, "d": 30, "rho": 0.95, "R": 40.0},
            "seed": {"master": 3, "stream": 0},
            "methods": ["match", "recover-pair"],
        },
    )
    assert response.status_code == 200
    record = response.json()
    assert record["failed"] is False
    assert record["matched_exactly"] is True
    assert record["params"]["n"] == 20.0
    assert record["region"] is not None


def test_trial_is_reproducible():
    payload = {
        "params": {"model": "cgmm", "n": 15, "d": 5, "rho": 0.4, "R": 3.0},
        "seed": {"master": 11, "stream": 4},
    }
    first = client.post("/experiments/trial", json=payload).json()
    second = client.post("/experiments/trial", json=payload).json()
    first.pop("wall_time"), second.pop("wall_time")
    assert first == second


def test_trial_size_limit():
    response = client.post(
        "/experiments/trial",
        json={
            "params": {"model": "cgmm", "n": settings.api_max_n + 1, "d": 1, "rho": 0.5, "R": 1.0},
            "seed": {"master": 0},
        },
    )
    assert response.status_code == 422
    assert "API limit" in response.json()["detail"]


def test_settings():
    response = client.get("/settings")
    assert response.status_code == 200
    body = response.json()
    assert body["default_eps"] == settings.default_eps
    assert body["api_max_n"] == settings.api_max_n
