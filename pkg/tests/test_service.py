import pytest
from fastapi.testclient import TestClient

from gic import optimizer
from gic.model import validate_params
from gic.service import create_app

PARAMS = {"a": 0.25, "b": 0.25, "p1": 2.0, "p2": 2.0, "sigma2": 1.0}


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json() == {"status": "ok"}


def test_region_endpoint_matches_library(client):
    resp = client.post("/region", json={"params": PARAMS,
                                        "mu_grid": [0.5, 1.0]})
    assert resp.status_code == 200
    data = resp.json()
    assert [p["mu"] for p in data["points"]] == [0.5, 1.0]
    cp = validate_params(**PARAMS)
    want = optimizer.trace_boundary(cp, [0.5, 1.0])
    for got, ref in zip(data["points"], want):
        assert got["r1"] == pytest.approx(ref.r1, abs=1e-12)
        assert got["r2"] == pytest.approx(ref.r2, abs=1e-12)
        assert got["dominant"] == ref.dominant
        assert got["r1"] == pytest.approx(got["r_u1"] + got["r_v1"], abs=1e-12)
    # Comparison rows carry a nonnegative gap and the agreement flag.
    for row in data["comparison"]:
        assert row["gap"] >= -1e-12
        assert row["agree"] == (row["gap"] <= 1e-6)
    # Time-sharing triples reconstruct the facet optimum.
    for p in data["points"]:
        ts = p["time_sharing"]
        assert ts is not None
        lam = ts["lam"]
        assert 0.0 <= lam <= 1.0


def test_region_rejects_non_weak_gains(client):
    resp = client.post("/region", json={"params": {**PARAMS, "a": 1.2},
                                        "mu_grid": [1.0]})
    assert resp.status_code == 400
    assert "weak" in resp.json()["detail"].lower() or \
        "0 <= a,b < 1" in resp.json()["detail"]


def test_region_rejects_bad_mu_grid(client):
    resp = client.post("/region", json={"params": PARAMS,
                                        "mu_grid": [2.0, 1.0]})
    assert resp.status_code == 400


def test_saturation_endpoint(client):
    resp = client.post("/saturation", json={"params": PARAMS,
                                            "mu_grid": [1.0]})
    assert resp.status_code == 200
    data = resp.json()
    assert data["all_ok"]
    row = data["rows"][0]
    assert row["residual"] <= row["tolerance"]
    assert row["p_hat_1"] == pytest.approx(2.0, abs=1e-6)


def test_layers_endpoint(client):
    resp = client.post("/layers", json={"params": PARAMS,
                                        "delta_list": [0.1, 0.05]})
    assert resp.status_code == 200
    data = resp.json()
    assert [r["delta"] for r in data["rows"]] == [0.1, 0.05]
    for r in data["rows"]:
        assert r["max_abs_error"] < 1e-10
    assert set(data["closed_form"]) == {"r_u1", "r_v1", "r_u2", "r_v2",
                                        "dummy_y1", "dummy_y2"}


def test_layers_endpoint_rejects_bad_delta(client):
    resp = client.post("/layers", json={"params": PARAMS,
                                        "delta_list": [-0.1]})
    assert resp.status_code == 400


def test_validate_endpoint(client):
    resp = client.post("/validate", json={"seed": 0})
    assert resp.status_code == 200
    data = resp.json()
    assert data["all_passed"]
    assert len(data["results"]) == 6
    assert data["report"].count("PASS") == 6


def test_validate_endpoint_injected_fault(client):
    resp = client.post("/validate", json={"seed": 0, "inject_fault": True})
    assert resp.status_code == 200
    data = resp.json()
    assert not data["all_passed"]
    failed = [r for r in data["results"] if not r["passed"]]
    assert failed[0]["name"] == "polymatroid-axioms"


def test_validate_deterministic_for_seed(client):
    a = client.post("/validate", json={"seed": 3}).json()
    b = client.post("/validate", json={"seed": 3}).json()
    assert a == b
