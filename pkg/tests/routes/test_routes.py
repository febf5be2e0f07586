import pytest
from fastapi.testclient import TestClient

from main import app

client = TestClient(app)


def test_welcome():
    response = client.get("/api/v1/")
    assert response.status_code == 200
    assert response.json()["App_Name"] == "Bessel Operator Domain Lab"
    assert response.json()["Grid"]["n"] == 1024


def test_health():
    assert client.get("/api/v1/health").json() == {"status": "ok"}


def test_region_route():
    response = client.get("/api/v1/analysis/region", params={"alpha": "-3+4i"})
    assert response.status_code == 200
    data = response.json()["data"]
    assert data["classification"]["region"] == "boundary"
    assert data["sqrt_alpha"]["re"] == pytest.approx(1.0)
    assert data["sqrt_alpha"]["im"] == pytest.approx(2.0)


def test_invalid_complex_is_a_bad_request():
    response = client.get("/api/v1/analysis/region", params={"alpha": "abc"})
    assert response.status_code == 400


def test_unbounded_norm_is_a_bad_request():
    response = client.get("/api/v1/analysis/norm", params={"alpha": "4"})
    assert response.status_code == 400
    assert "Q is bounded only inside" in response.json()["detail"]


def test_factorize_route():
    response = client.get("/api/v1/analysis/factorize", params={"m": "0.5", "sign": "plus"})
    assert response.status_code == 200
    assert response.json()["data"]["deviation_plus"] <= 1e-6


def test_unknown_sign_is_rejected_by_validation():
    response = client.get("/api/v1/analysis/factorize", params={"m": "0.5", "sign": "sideways"})
    assert response.status_code == 422
