"""HTTP service tests, driven through the ASGI test client.

The service is a thin shell over the same generation pipeline as the
CLI; the cross-interface equality test is the anchor, everything else
covers request plumbing: validation bodies, preview bounds, permalinks.
"""

from __future__ import annotations

import io
import json
from concurrent.futures import ThreadPoolExecutor

import pytest
from fastapi.testclient import TestClient

from spatialgen.descriptor import generate_dataset, parse_descriptor
from spatialgen.formats import OutputFormat, write_dataset
from spatialgen.service import decode_permalink, encode_permalink, create_app

UNIFORM = "uniform,200,2,0.02,0.02,1,0,0,0,1,0"
DIAGONAL = "diagonal,100,2,0.01,0.01,0.2,0.1,1,0,0,0,1,0"


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


# --- /api/generate ------------------------------------------------------------


def test_generate_streams_csv_with_media_type(client):
    r = client.get("/api/generate", params={"descriptor": UNIFORM, "seed": 7})
    assert r.status_code == 200
    assert r.headers["content-type"].startswith("text/csv")
    assert "attachment" in r.headers["content-disposition"]
    assert len(r.text.splitlines()) == 201


@pytest.mark.parametrize("fmt", ["csv", "wkt", "geojson"])
def test_generate_bytes_equal_direct_writer_output(client, fmt):
    r = client.get(
        "/api/generate", params={"descriptor": UNIFORM, "seed": 11, "format": fmt}
    )
    assert r.status_code == 200
    sink = io.StringIO()
    write_dataset(
        generate_dataset(parse_descriptor(UNIFORM), 11), sink, OutputFormat(fmt)
    )
    assert r.text == sink.getvalue()


def test_generate_supports_compound_descriptors(client):
    r = client.get(
        "/api/generate",
        params={"descriptor": [UNIFORM, DIAGONAL], "seed": 3, "format": "wkt"},
    )
    assert r.status_code == 200
    assert len(r.text.splitlines()) == 300


def test_generate_same_request_twice_is_byte_identical(client):
    params = {"descriptor": DIAGONAL, "seed": 42, "format": "geojson"}
    assert client.get("/api/generate", params=params).content == client.get(
        "/api/generate", params=params
    ).content


def test_generate_is_deterministic_under_concurrency(client):
    params = {"descriptor": UNIFORM, "seed": 5}
    with ThreadPoolExecutor(max_workers=8) as pool:
        bodies = list(
            pool.map(lambda _: client.get("/api/generate", params=params).content, range(16))
        )
    assert len(set(bodies)) == 1


def test_generate_missing_descriptor_is_400(client):
    r = client.get("/api/generate")
    assert r.status_code == 400
    body = r.json()
    assert body["code"] == "bad-descriptor"
    assert "descriptor" in body["message"]


def test_generate_invalid_descriptor_reports_position(client):
    r = client.get("/api/generate", params={"descriptor": "uniform,0,2,0,0,1,0,0,0,1,0"})
    assert r.status_code == 400
    body = r.json()
    assert body["code"] == "bad-descriptor"
    assert body["position"] == 2


def test_generate_unknown_format_is_400(client):
    r = client.get("/api/generate", params={"descriptor": UNIFORM, "format": "shp"})
    assert r.status_code == 400
    assert "format" in r.json()["message"]


def test_generate_bad_seed_values_are_400(client):
    r = client.get("/api/generate", params={"descriptor": UNIFORM, "seed": -1})
    assert r.status_code == 400
    r = client.get("/api/generate", params={"descriptor": UNIFORM, "seed": "abc"})
    assert r.status_code == 400
    assert r.json()["code"] == "bad-request"


def test_cors_headers_are_present(client):
    r = client.get(
        "/api/generate",
        params={"descriptor": UNIFORM},
        headers={"Origin": "http://localhost:5173"},
    )
    assert r.headers.get("access-control-allow-origin") == "*"


# --- /api/preview ---------------------------------------------------------------


def test_preview_returns_prefix_of_full_stream(client):
    full = client.get(
        "/api/generate",
        params={"descriptor": UNIFORM, "seed": 7, "format": "geojson"},
    ).json()["features"]
    preview = client.get(
        "/api/preview", params={"descriptor": UNIFORM, "seed": 7, "limit": 50}
    ).json()
    assert preview["type"] == "FeatureCollection"
    assert preview["features"] == full[:50]
    assert preview["metadata"] == {
        "total": 200,
        "returned": 50,
        "limit": 50,
        "clamped": False,
    }


def test_preview_media_type(client):
    r = client.get("/api/preview", params={"descriptor": UNIFORM, "limit": 1})
    assert r.headers["content-type"].startswith("application/geo+json")


def test_preview_limit_zero_is_empty(client):
    doc = client.get(
        "/api/preview", params={"descriptor": UNIFORM, "limit": 0}
    ).json()
    assert doc["features"] == []
    assert doc["metadata"]["returned"] == 0


def test_preview_defaults_cover_small_datasets(client):
    doc = client.get("/api/preview", params={"descriptor": DIAGONAL}).json()
    assert doc["metadata"]["returned"] == 100
    assert doc["metadata"]["total"] == 100


def test_preview_clamps_oversized_limits(client):
    doc = client.get(
        "/api/preview", params={"descriptor": UNIFORM, "limit": 50_000}
    ).json()
    assert doc["metadata"]["clamped"] is True
    assert doc["metadata"]["limit"] == 10_000
    assert doc["metadata"]["returned"] == 200  # dataset is smaller than the cap


def test_preview_negative_limit_is_400(client):
    r = client.get("/api/preview", params={"descriptor": UNIFORM, "limit": -5})
    assert r.status_code == 400


def test_preview_compound_counts_all_parts(client):
    doc = client.get(
        "/api/preview",
        params={"descriptor": [UNIFORM, DIAGONAL], "limit": 250, "seed": 2},
    ).json()
    assert doc["metadata"]["total"] == 300
    assert doc["metadata"]["returned"] == 250


# --- permalinks -------------------------------------------------------------------


def test_permalink_round_trip(client):
    r = client.post(
        "/api/permalink", json={"descriptors": [UNIFORM, DIAGONAL], "seed": 99}
    )
    assert r.status_code == 200
    token = r.json()["token"]
    resolved = client.get(f"/api/permalink/{token}")
    assert resolved.status_code == 200
    assert resolved.json() == {"descriptors": [UNIFORM, DIAGONAL], "seed": 99}


def test_permalink_canonicalizes_descriptor_text(client):
    r = client.post(
        "/api/permalink",
        json={"descriptors": ["uniform, 200 ,2,0.020,0.02,1.0,0,0,0,1,0"], "seed": 1},
    )
    assert r.json() == client.post(
        "/api/permalink", json={"descriptors": [UNIFORM], "seed": 1}
    ).json()


def test_permalink_rejects_tampering(client):
    token = client.post(
        "/api/permalink", json={"descriptors": [UNIFORM], "seed": 7}
    ).json()["token"]
    body, digest = token.rsplit(".", 1)
    flipped = ("A" if body[0] != "A" else "B") + body[1:]
    r = client.get(f"/api/permalink/{flipped}.{digest}")
    assert r.status_code == 400
    r = client.get(f"/api/permalink/{body}.00000000")
    assert r.status_code == 400
    assert client.get("/api/permalink/garbage").status_code == 400


def test_permalink_rejects_invalid_payloads(client):
    assert client.post("/api/permalink", json={"descriptors": [], "seed": 0}).status_code == 400
    assert client.post(
        "/api/permalink", json={"descriptors": ["nope,1,2"], "seed": 0}
    ).status_code == 400
    assert client.post(
        "/api/permalink", json={"descriptors": [UNIFORM], "seed": -2}
    ).status_code == 400
    assert client.post("/api/permalink", json={"seed": 1}).status_code == 400


def test_permalink_tokens_separate_payloads():
    a = encode_permalink([UNIFORM], 1)
    b = encode_permalink([UNIFORM], 2)
    c = encode_permalink([DIAGONAL], 1)
    assert len({a, b, c}) == 3
    assert decode_permalink(a) == ([UNIFORM], 1)


def test_decode_permalink_validates_embedded_descriptors():
    # a well-formed token around a broken descriptor must still fail
    bad = encode_permalink(["uniform,0,2,0,0,1,0,0,0,1,0"], 0)
    with pytest.raises(Exception):
        decode_permalink(bad)


# --- static UI mount ---------------------------------------------------------------


def test_static_ui_mount_serves_files_without_shadowing_api(tmp_path):
    (tmp_path / "index.html").write_text("<html><body>ui</body></html>")
    ui_client = TestClient(create_app(ui_dir=str(tmp_path)))
    assert "ui" in ui_client.get("/").text
    r = ui_client.get("/api/preview", params={"descriptor": DIAGONAL, "limit": 1})
    assert r.status_code == 200


def test_missing_ui_dir_is_ignored():
    TestClient(create_app(ui_dir="/nonexistent/path")).get("/api/generate")
