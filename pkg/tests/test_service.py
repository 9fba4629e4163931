"""Session API: creation, legality authority, optimistic concurrency,
idempotent replay, hints, analysis, engine policy, persistence."""

import pytest
from fastapi.testclient import TestClient

from linkgame.service import create_app


@pytest.fixture()
def client():
    return TestClient(create_app())


def create_whitehead(client, human="unlinker", first="unlinker"):
    r = client.post("/sessions", json={
        "preset": "whitehead", "human_role": human, "first_mover": first})
    assert r.status_code == 200, r.text
    return r.json()


def test_create_whitehead_session(client):
    payload = create_whitehead(client)
    assert len(payload["crossings"]) == 5
    assert payload["mover"] == "unlinker"
    assert payload["plk"] == 0
    assert all(c["x"] is not None for c in payload["crossings"])
    kinds = sorted(c["kind"] for c in payload["crossings"])
    assert kinds == ["NSI", "NSI", "NSI", "NSI", "SI"]


def test_create_word_session(client):
    r = client.post("/sessions", json={
        "word": "(2)", "closure": "denominator",
        "human_role": "linker", "first_mover": "linker"})
    assert r.status_code == 200
    assert len(r.json()["crossings"]) == 2


def test_create_rejects_knot_closure(client):
    r = client.post("/sessions", json={
        "word": "(1,1)", "closure": "denominator"})
    assert r.status_code == 422


def test_move_flow_and_engine_reply(client):
    payload = create_whitehead(client)
    sid = payload["session"]
    r = client.post(f"/sessions/{sid}/moves", json={
        "crossing": 2, "resolution": "/", "version": 0})
    assert r.status_code == 200
    after = r.json()
    # human + engine moved atomically
    assert after["version"] == 2
    assert after["mover"] == "unlinker"
    assert after["engine_notes"]


def test_move_on_resolved_crossing_rejected(client):
    payload = create_whitehead(client)
    sid = payload["session"]
    first = client.post(f"/sessions/{sid}/moves", json={
        "crossing": 2, "resolution": "/", "version": 0}).json()
    taken = [h["crossing"] for h in first["history"]]
    r = client.post(f"/sessions/{sid}/moves", json={
        "crossing": taken[0], "resolution": "/", "version": first["version"]})
    assert r.status_code == 422


def test_stale_version_conflict(client):
    payload = create_whitehead(client)
    sid = payload["session"]
    client.post(f"/sessions/{sid}/moves", json={
        "crossing": 2, "resolution": "/", "version": 0})
    r = client.post(f"/sessions/{sid}/moves", json={
        "crossing": 0, "resolution": "/", "version": 0})
    assert r.status_code == 409


def test_idempotent_resubmission(client):
    payload = create_whitehead(client)
    sid = payload["session"]
    body = {"crossing": 2, "resolution": "/", "version": 0}
    first = client.post(f"/sessions/{sid}/moves", json=body).json()
    second = client.post(f"/sessions/{sid}/moves", json=body).json()
    assert first == second
    assert client.get(f"/sessions/{sid}").json()["version"] == 2


def test_unknown_session_404(client):
    assert client.get("/sessions/nope").status_code == 404


def test_thm6_engine_copies_sign(client):
    """Human Unlinker vs engine Linker on a 0-SI shadow: the engine's
    first NSI reply drives |plk| to 1."""
    r = client.post("/sessions", json={
        "word": "(2,2)", "human_role": "unlinker", "first_mover": "unlinker"})
    sid = r.json()["session"]
    after = client.post(f"/sessions/{sid}/moves", json={
        "crossing": 0, "resolution": "/", "version": 0}).json()
    assert abs(after["plk"]) == 1
    assert "strategy" in after["engine_notes"][0]


def test_hint_r2_response(client):
    """After the Linker opens in a twist region, the Unlinker's hint is
    the R2 response in that region."""
    r = client.post("/sessions", json={
        "preset": "whitehead", "human_role": "linker",
        "first_mover": "linker"})
    sid = r.json()["session"]
    after = client.post(f"/sessions/{sid}/moves", json={
        "crossing": 0, "resolution": "/", "version": 0}).json()
    if after["mover"] == "unlinker":
        hint = client.get(f"/sessions/{sid}/hint").json()
        assert "rationale" in hint
        assert hint["crossing"] in [c["id"] for c in after["crossings"]
                                    if c["state"] == "?"]


def test_analysis_on_fresh_2(client):
    r = client.post("/sessions", json={
        "word": "(2)", "human_role": "linker", "first_mover": "linker"})
    sid = r.json()["session"]
    # engine (unlinker) hasn't moved: linker is first
    analysis = client.get(f"/sessions/{sid}/analysis")
    assert analysis.status_code == 200
    data = analysis.json()
    assert data["winner"] == "second"


def test_full_worked_game_with_scripted_engine(client):
    """Replaying the worked game: human Unlinker, engine Linker.  The
    engine plays its own replies; the Unlinker answers each with the
    R2 response, and must win."""
    payload = create_whitehead(client)
    sid = payload["session"]
    version = 0
    state = payload
    # opening: resolve the central SI
    state = client.post(f"/sessions/{sid}/moves", json={
        "crossing": 2, "resolution": "/", "version": version}).json()
    while not state["terminal"]:
        last = state["history"][-1]
        hint = client.get(f"/sessions/{sid}/hint").json()
        state = client.post(f"/sessions/{sid}/moves", json={
            "crossing": hint["crossing"], "resolution": hint["resolution"],
            "version": state["version"]}).json()
    assert state["outcome"]["winner"] == "unlinker"
    assert state["plk"] == 0


def test_persistence_across_restart(tmp_path):
    state_dir = str(tmp_path / "sessions")
    client1 = TestClient(create_app(state_dir=state_dir))
    payload = client1.post("/sessions", json={
        "preset": "whitehead", "human_role": "unlinker",
        "first_mover": "unlinker"}).json()
    sid = payload["session"]
    after = client1.post(f"/sessions/{sid}/moves", json={
        "crossing": 2, "resolution": "/", "version": 0}).json()

    client2 = TestClient(create_app(state_dir=state_dir))
    restored = client2.get(f"/sessions/{sid}")
    assert restored.status_code == 200
    data = restored.json()
    assert data["version"] == after["version"]
    assert data["plk"] == after["plk"]
    assert [h["crossing"] for h in data["history"]] == \
        [h["crossing"] for h in after["history"]]
    # play continues against the restored engine
    nxt = [c["id"] for c in data["crossings"] if c["state"] == "?"][0]
    r = client2.post(f"/sessions/{sid}/moves", json={
        "crossing": nxt, "resolution": "/", "version": data["version"]})
    assert r.status_code == 200
