"""Tests for the HTTP service endpoints."""

import json
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from cuwcodes import __version__
from cuwcodes.designio import deserialize, serialize
from cuwcodes.designs import SlotDesign, abba_construction, blockdiag_construction
from cuwcodes.server import app, create_app
from cuwcodes.simulate import results_to_csv, run_monte_carlo

client = TestClient(app)

GOLDEN = Path(__file__).parent / "data" / "abba_alamouti_a1.json"


def golden_doc() -> dict:
    return json.loads(GOLDEN.read_text())


def test_create_app_returns_fresh_instances():
    assert create_app() is not create_app()


def test_info():
    resp = client.get("/")
    assert resp.status_code == 200
    body = resp.json()
    assert body["name"] == "cuwcodes"
    assert body["version"] == __version__
    assert "/construct" in body["endpoints"]
    assert "/simulate" in body["endpoints"]


# --- /construct ------------------------------------------------------------

def test_construct_blockdiag_json():
    resp = client.post("/construct", json={"method": "blockdiag", "g": 2, "lambda": 2})
    assert resp.status_code == 200
    body = resp.json()
    assert (body["nt"], body["k"]) == (2, 4)
    assert body["rate"] == "1" and body["max_rate"] == "1"
    doc = body["design"]
    assert doc["lambda"] == 2
    assert doc["partition"] == [[1, 2], [3, 4]]
    assert deserialize(json.dumps(doc)) == blockdiag_construction(2, 2)


def test_construct_file_bytes_are_canonical():
    resp = client.post(
        "/construct",
        params={"format": "file"},
        json={"method": "blockdiag", "g": 3, "lambda": 4},
    )
    assert resp.status_code == 200
    assert resp.headers["content-type"].startswith("application/json")
    assert resp.content == serialize(blockdiag_construction(3, 4))


def test_construct_abba_matches_golden_file():
    resp = client.post(
        "/construct",
        params={"format": "file"},
        json={"method": "abba", "lambda": 2, "slot": "alamouti"},
    )
    assert resp.status_code == 200
    assert resp.content == GOLDEN.read_bytes()


def test_construct_tensor_styles_differ():
    diag = client.post("/construct", json={"method": "tensor", "g": 2, "lambda": 2}).json()
    reg = client.post(
        "/construct",
        json={"method": "tensor", "g": 2, "lambda": 2, "delta_style": "regular"},
    ).json()
    assert diag["design"]["matrices"] != reg["design"]["matrices"]


def test_construct_errors():
    resp = client.post("/construct", json={"method": "blockdiag", "lambda": 2})
    assert resp.status_code == 400
    assert "requires g" in resp.json()["detail"]

    resp = client.post("/construct", json={"method": "tensor", "g": 2, "lambda": 3})
    assert resp.status_code == 400
    assert "power of two" in resp.json()["detail"]

    resp = client.post("/construct", json={"method": "abba", "lambda": 1})
    assert resp.status_code == 400

    resp = client.post("/construct", json={"method": "abba", "lambda": 2, "g": 5})
    assert resp.status_code == 400
    assert "has g=4" in resp.json()["detail"]

    resp = client.post("/construct", json={"method": "unknown", "lambda": 2})
    assert resp.status_code == 422


# --- /verify ---------------------------------------------------------------

def test_verify_passes_for_golden_design():
    resp = client.post("/verify", json={"design": golden_doc()})
    assert resp.status_code == 200
    body = resp.json()
    assert body["passed"] is True
    assert [c["name"] for c in body["checks"]] == [
        "unitary",
        "leading_identity",
        "first_row_family",
        "first_column_relations",
        "fill_rule",
        "cross_group_quasi_orthogonal",
    ]
    assert body["rate"] == "1"
    assert body["max_rate"] == "1"


def test_verify_with_explicit_partitions():
    ok = client.post(
        "/verify",
        json={"design": golden_doc(), "partition": [[1, 2, 3, 4], [5, 6, 7, 8]]},
    ).json()
    assert ok["passed"] is True

    bad = client.post(
        "/verify",
        json={"design": golden_doc(), "partition": [[1, 3, 5, 7], [2, 4, 6, 8]]},
    ).json()
    assert bad["passed"] is False
    failing = [c for c in bad["checks"] if not c["passed"]]
    assert failing == [
        {
            "name": "cross_group_quasi_orthogonal",
            "passed": False,
            "witness": "weights[0] (group 0) and weights[1] (group 1) are not quasi-orthogonal",
            "witnesses": [
                "weights[0] (group 0) and weights[1] (group 1) are not quasi-orthogonal"
            ],
        }
    ]


def test_verify_flags_corrupt_design():
    doc = golden_doc()
    doc["matrices"][3] = [[[2 * re, 2 * im] for re, im in row] for row in doc["matrices"][3]]
    resp = client.post("/verify", json={"design": doc})
    assert resp.status_code == 400
    assert resp.json()["detail"] == "matrices[3] is not unitary"


def test_verify_partition_errors():
    resp = client.post(
        "/verify", json={"design": golden_doc(), "partition": [[1, 9], [2, 3, 4, 5, 6, 7, 8]]}
    )
    assert resp.status_code == 400
    assert "outside 1..8" in resp.json()["detail"]

    resp = client.post(
        "/verify", json={"design": golden_doc(), "partition": [[1, 1], [2, 3, 4, 5, 6, 7, 8]]}
    )
    assert resp.status_code == 400

    resp = client.post("/verify", json={})
    assert resp.status_code == 422


# --- /rate-table -----------------------------------------------------------

def test_rate_table_contents():
    resp = client.get("/rate-table", params={"gmax": 8})
    assert resp.status_code == 200
    rows = resp.json()["rows"]
    assert [r["g"] for r in rows] == list(range(1, 9))
    assert [r["max_rate"] for r in rows] == [
        "1/2", "1", "3/4", "1", "5/8", "3/4", "7/16", "1/2",
    ]
    assert rows[3]["min_nt"] == {"1": 2, "2": 4, "4": 8, "8": 16}
    assert rows[0]["min_nt"] == {"1": 1, "2": 2, "4": 4, "8": 8}


def test_rate_table_bounds():
    assert client.get("/rate-table", params={"gmax": 0}).status_code == 422
    assert client.get("/rate-table", params={"gmax": 65}).status_code == 422
    assert client.get("/rate-table").status_code == 422


# --- /simulate -------------------------------------------------------------

BLOCKDIAG22_DOC = json.loads(serialize(blockdiag_construction(2, 2)))


def test_simulate_json_matches_library():
    req = {"design": BLOCKDIAG22_DOC, "snr_db": [0.0, 10.0], "trials": 60, "seed": 3}
    resp = client.post("/simulate", json=req)
    assert resp.status_code == 200
    rows = resp.json()["rows"]
    direct = run_monte_carlo(blockdiag_construction(2, 2), [0.0, 10.0], trials=60, seed=3)
    assert rows == [
        {"snr_db": p.snr_db, "ser": p.ser, "agreement": p.agreement, "trials": p.trials}
        for p in direct
    ]


def test_simulate_csv_matches_library():
    req = {"design": BLOCKDIAG22_DOC, "snr_db": [5.0], "trials": 40, "seed": 9}
    resp = client.post("/simulate", params={"format": "csv"}, json=req)
    assert resp.status_code == 200
    assert resp.headers["content-type"].startswith("text/csv")
    direct = run_monte_carlo(blockdiag_construction(2, 2), [5.0], trials=40, seed=9)
    assert resp.text == results_to_csv(direct)


def test_simulate_rejects_impossible_constellation():
    req = {
        "design": BLOCKDIAG22_DOC,
        "snr_db": [0.0],
        "trials": 10,
        "points_per_group": 5,
    }
    resp = client.post("/simulate", json=req)
    assert resp.status_code == 400
    assert "5 points" in resp.json()["detail"]


def test_simulate_validation():
    assert client.post("/simulate", json={"design": BLOCKDIAG22_DOC}).status_code == 422
    req = {"design": BLOCKDIAG22_DOC, "snr_db": [0.0], "trials": 0}
    assert client.post("/simulate", json=req).status_code == 422


# --- /group-check ----------------------------------------------------------

def test_group_check_passes():
    resp = client.get("/group-check", params={"n": 2, "a": 1})
    assert resp.status_code == 200
    body = resp.json()
    assert body["passed"] is True
    assert (body["n"], body["a"], body["order"]) == (2, 1, 16)
    assert [c["name"] for c in body["checks"]] == [
        "closure",
        "inverses",
        "factorization",
        "commutation",
    ]


def test_group_check_guards():
    resp = client.get("/group-check", params={"n": 8, "a": 8})
    assert resp.status_code == 400
    assert "too large" in resp.json()["detail"]
    assert client.get("/group-check", params={"n": 9, "a": 0}).status_code == 422
    assert client.get("/group-check", params={"n": -1, "a": 0}).status_code == 422
