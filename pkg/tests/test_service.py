"""HTTP session service: endpoints, revisions, admissibility rejections."""

import pytest
from fastapi.testclient import TestClient

from patchwork.service import create_app

from conftest import CONIC_TRIANGLES

CONIC_PATCH = (
    "polygon:\n0 0\n2 0\n0 2\n"
    "triangles:\n"
    + "".join(" ".join(f"{x} {y}" for (x, y) in t) + "\n" for t in CONIC_TRIANGLES)
    + "twists:\n"
)


@pytest.fixture()
def client():
    return TestClient(create_app())


def create_conic(client):
    resp = client.post("/sessions", json={"patch": CONIC_PATCH})
    assert resp.status_code == 200
    return resp.json()


def test_create_and_get(client):
    state = create_conic(client)
    assert state["revision"] == 0
    assert state["report"]["components"] == 1
    assert state["report"]["p"] == 1 and state["report"]["n"] == 0
    again = client.get(f"/sessions/{state['id']}").json()
    assert again == state


def test_unknown_session(client):
    assert client.get("/sessions/nope").status_code == 404


def test_toggle_bridge_keeps_component(client):
    state = create_conic(client)
    resp = client.post(f"/sessions/{state['id']}/toggle-twist",
                       json={"dual": [[1, 0], [0, 1]], "revision": 0})
    assert resp.status_code == 200
    body = resp.json()
    assert body["revision"] == 1
    assert body["report"]["components"] == 1        # genus 0
    assert [[0, 1], [1, 0]] in body["twists"]


def test_stale_revision_conflict(client):
    state = create_conic(client)
    sid = state["id"]
    assert client.post(f"/sessions/{sid}/toggle-twist",
                       json={"dual": [[1, 0], [0, 1]], "revision": 0}).status_code == 200
    resp = client.post(f"/sessions/{sid}/toggle-twist",
                       json={"dual": [[1, 0], [0, 1]], "revision": 0})
    assert resp.status_code == 409
    assert resp.json()["detail"]["revision"] == 1


def test_inadmissible_toggle_names_cycle(client):
    resp = client.post("/sessions", json={"ragsdale": {"k": 2}})
    # degree-4 full construction does not exist; use a quartic patch instead
    assert resp.status_code == 422

    from conftest import staircase_triangles
    patch = ("polygon:\n0 0\n4 0\n0 4\ntriangles:\n"
             + "".join(" ".join(f"{x} {y}" for (x, y) in t) + "\n"
                       for t in staircase_triangles(4))
             + "twists:\n")
    state = client.post("/sessions", json={"patch": patch}).json()
    resp = client.post(f"/sessions/{state['id']}/toggle-twist",
                       json={"dual": [[1, 1], [2, 1]], "revision": 0})
    assert resp.status_code == 422
    detail = resp.json()["detail"]
    assert detail["violated_cycle"] in ([1, 1], [2, 1])


def test_flip_sign_recomputes_twists(client):
    state = create_conic(client)
    resp = client.post(f"/sessions/{state['id']}/flip-sign",
                       json={"point": [1, 1], "revision": 0})
    assert resp.status_code == 200
    body = resp.json()
    assert body["revision"] == 1
    assert len(body["twists"]) == 3          # all three bounded edges toggle
    assert body["report"]["components"] == 1


def test_ragsdale_session(client):
    resp = client.post("/sessions", json={"ragsdale": {"k": 5}})
    assert resp.status_code == 200
    body = resp.json()
    assert body["report"]["p"] == 32
    assert body["report"]["components"] == 35


def test_svg_endpoint(client):
    state = create_conic(client)
    sid = state["id"]
    for view in ("subdivision", "zones", "realpart"):
        resp = client.get(f"/sessions/{sid}/svg", params={"view": view})
        assert resp.status_code == 200
        assert resp.headers["content-type"].startswith("image/svg+xml")
        assert resp.text.startswith("<?xml")
    assert client.get(f"/sessions/{sid}/svg", params={"view": "bogus"}).status_code == 422


def test_patch_export_round_trips(client):
    state = create_conic(client)
    sid = state["id"]
    client.post(f"/sessions/{sid}/toggle-twist",
                json={"dual": [[1, 0], [0, 1]], "revision": 0})
    resp = client.get(f"/sessions/{sid}/patch")
    assert resp.status_code == 200
    reloaded = client.post("/sessions", json={"patch": resp.text}).json()
    assert reloaded["twists"] == client.get(f"/sessions/{sid}").json()["twists"]


def test_create_requires_exactly_one_source(client):
    assert client.post("/sessions", json={}).status_code == 422
    assert client.post("/sessions", json={
        "patch": CONIC_PATCH, "ragsdale": {"k": 5}}).status_code == 422
