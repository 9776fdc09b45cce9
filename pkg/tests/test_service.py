"""HTTP service: every endpoint, scenario resolution rules and the 422
mapping for configuration errors."""

from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from conftest import OFFSETS_23, mob
from hosweep import __version__
from hosweep.config import hetnet_scenario
from hosweep.linkbudget import build_circle_set
from hosweep.lte import evaluate_lte
from hosweep.service.app import create_app
from hosweep.zeus import evaluate_zeus
from test_config import VALID_INI

SCENARIO_250 = {
    "macro": {"tx_power_dbm": 46.0, "antenna_gain_dbi": 14.0,
              "pathloss_intercept_db": 128.1, "pathloss_slope_db": 37.6},
    "pico": {"tx_power_dbm": 30.0, "antenna_gain_dbi": 5.0,
             "pathloss_intercept_db": 140.7, "pathloss_slope_db": 36.7},
    "macro_pico_distance_m": 250.0,
}


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app()) as c:
        yield c


# --------------------------------------------------------------------------
# Introspection endpoints
# --------------------------------------------------------------------------

def test_health(client):
    body = client.get("/health").json()
    assert body == {"status": "ok", "version": __version__}


def test_presets_listing(client):
    body = client.get("/presets").json()
    names = {p["name"] for p in body}
    assert names == {"fig7", "fig8", "fig9", "table4"}
    assert all(p["description"] for p in body)


# --------------------------------------------------------------------------
# Geometry endpoints
# --------------------------------------------------------------------------

def test_boundaries_equal_power(client):
    resp = client.post("/boundaries",
                       json={"preset_distance_m": 250.0, "rss_diff_db": 0.0})
    assert resp.status_code == 200
    body = resp.json()
    assert body["m2p_m"] == pytest.approx(229.11, abs=0.05)
    assert body["p2m_m"] == pytest.approx(275.20, abs=0.05)
    assert body["radius_m"] == pytest.approx(23.04, abs=0.05)


def test_boundaries_accepts_inline_scenario(client):
    resp = client.post("/boundaries",
                       json={"scenario": SCENARIO_250, "rss_diff_db": -8.0})
    assert resp.status_code == 200
    assert resp.json()["m2p_m"] == pytest.approx(217.32, abs=0.05)


def test_boundaries_unreachable_offset_is_422(client):
    resp = client.post("/boundaries",
                       json={"preset_distance_m": 250.0, "rss_diff_db": 60.0})
    assert resp.status_code == 422
    assert resp.json()["detail"].startswith("configuration error:")


def test_ho_region_default_offsets(client):
    resp = client.post("/ho-region", json={"preset_distance_m": 250.0})
    assert resp.status_code == 200
    assert resp.json()["size_m"] == pytest.approx(3.882, abs=0.005)


def test_circles_with_threshold_rules(client):
    expected = build_circle_set(hetnet_scenario(250.0), OFFSETS_23)
    body = client.post("/circles", json={"preset_distance_m": 250.0}).json()
    for name in ("r_m", "r_me", "r_mp", "big_r", "r_pp", "r_pe", "r_p"):
        assert body[name] == pytest.approx(getattr(expected, name), abs=1e-9)
    assert body["r_thresh"] == body["big_r"]

    trig = client.post("/circles", json={"preset_distance_m": 250.0,
                                         "r_thresh_rule": "trigger"}).json()
    assert trig["r_thresh"] == trig["r_mp"]


def test_circles_offsets_override(client):
    body = client.post(
        "/circles",
        json={
            "preset_distance_m": 250.0,
            "offsets": {"hom_in_db": 1.0, "hom_out_db": -1.0,
                        "hoe_in_db": 2.0, "hoe_out_db": -2.0},
        },
    ).json()
    assert body["r_mp"] == pytest.approx(21.62, abs=0.05)
    assert body["r_me"] == pytest.approx(20.28, abs=0.05)


def test_scenario_sources_are_mutually_exclusive(client):
    resp = client.post(
        "/circles",
        json={"preset_distance_m": 250.0, "config_ini": VALID_INI},
    )
    assert resp.status_code == 422
    assert "only one of" in resp.json()["detail"]


def test_missing_scenario_is_422(client):
    resp = client.post("/boundaries", json={"rss_diff_db": 0.0})
    assert resp.status_code == 422
    assert resp.json()["detail"].startswith("configuration error:")


# --------------------------------------------------------------------------
# Single-point outcomes
# --------------------------------------------------------------------------

def test_outcomes_lte_anchor(client):
    resp = client.post(
        "/outcomes",
        json={"preset_distance_m": 250.0, "policy": "lte",
              "mobility": {"v_kmh": 120.0}},
    )
    assert resp.status_code == 200
    body = resp.json()
    expected = evaluate_lte(build_circle_set(hetnet_scenario(250.0),
                                             OFFSETS_23), mob(120))
    assert body["policy"] == "LTE"
    assert body["p_hof_mue_norm"] == pytest.approx(expected.p_hof_mue_norm)
    assert body["p_hof_mue_norm"] == pytest.approx(0.80, abs=0.01)
    assert body["p_pp_norm"] == pytest.approx(0.94, abs=0.01)


def test_outcomes_zeus_ext_suppressed_point(client):
    resp = client.post(
        "/outcomes",
        json={"preset_distance_m": 250.0, "policy": "zeus-ext",
              "mobility": {"v_kmh": 85.0}},
    )
    body = resp.json()
    assert body["policy"] == "ZEUS+ext"
    assert body["p_nho"] == 1.0 and body["p_pp"] == 0.0


def test_outcomes_zeus_matches_core(client):
    resp = client.post(
        "/outcomes",
        json={"scenario": SCENARIO_250, "policy": "zeus",
              "mobility": {"v_kmh": 85.0, "t_pp_s": 1.0}},
    )
    expected = evaluate_zeus(build_circle_set(hetnet_scenario(250.0),
                                              OFFSETS_23), mob(85))
    assert resp.json()["p_pp_norm"] == pytest.approx(expected.p_pp_norm)


def test_outcomes_unknown_policy_is_422(client):
    resp = client.post(
        "/outcomes",
        json={"preset_distance_m": 250.0, "policy": "wimax",
              "mobility": {"v_kmh": 60.0}},
    )
    assert resp.status_code == 422
    assert "unknown policy" in resp.json()["detail"]


def test_outcomes_requires_mobility(client):
    resp = client.post("/outcomes",
                       json={"preset_distance_m": 250.0, "policy": "lte"})
    assert resp.status_code == 422  # request-model validation


def test_outcomes_rejects_nonpositive_speed(client):
    resp = client.post(
        "/outcomes",
        json={"preset_distance_m": 250.0, "policy": "lte",
              "mobility": {"v_kmh": 0.0}},
    )
    assert resp.status_code == 422


# --------------------------------------------------------------------------
# Sweeps
# --------------------------------------------------------------------------

def test_sweep_preset_subset(client):
    resp = client.post(
        "/sweep",
        json={"preset": "fig7", "policies": ["zeus"],
              "velocities_kmh": [30.0, 85.0]},
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["n_rows"] == 4  # two parameter sets x two speeds
    assert body["validation"] is None
    lines = body["csv"].splitlines()
    assert lines[0].startswith("policy,distance_m,hom_db,hoe_db,ttt_ms,v_kmh")
    assert len(lines) == 5
    assert all(line.split(",")[1] == "250" for line in lines[1:])


def test_sweep_custom_scenario_rows_match_core(client):
    resp = client.post(
        "/sweep",
        json={
            "scenario": SCENARIO_250,
            "policies": ["lte"],
            "lte_sets": [{"hom_db": 2.0, "hoe_db": 3.0, "ttt_ms": 480.0}],
            "velocities_kmh": [120.0],
        },
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["n_rows"] == 1
    cells = body["csv"].splitlines()[1].split(",")
    expected = evaluate_lte(build_circle_set(hetnet_scenario(250.0),
                                             OFFSETS_23), mob(120))
    assert cells[8] == f"{expected.p_hof_mue_norm:.6g}"


def test_sweep_config_ini_source(client):
    resp = client.post(
        "/sweep",
        json={"config_ini": VALID_INI, "policies": ["zeus"],
              "zeus_sets": [{"hop_db": 2.0, "hoe_db": 3.0}],
              "velocities_kmh": [85.0]},
    )
    assert resp.status_code == 200
    assert resp.json()["n_rows"] == 1


def test_sweep_validated_summary(client):
    resp = client.post(
        "/sweep",
        json={"preset": "fig7", "policies": ["zeus-ext"],
              "velocities_kmh": [85.0, 120.0], "validate_mc": True,
              "samples": 10_000, "seed": 3},
    )
    body = resp.json()
    assert body["validation"] is not None
    assert body["validation"]["n_points"] == 4
    assert body["validation"]["n_checks"] == 20
    assert body["validation"]["passed"] is True  # suppressed points are exact
    assert "# validation:" in body["csv"]


def test_sweep_needs_some_scenario(client):
    resp = client.post("/sweep", json={"policies": ["lte"]})
    assert resp.status_code == 422
    assert "needs a preset or a scenario" in resp.json()["detail"]


def test_sweep_rejects_table4_preset(client):
    resp = client.post("/sweep", json={"preset": "table4"})
    assert resp.status_code == 422
    assert "/table4" in resp.json()["detail"]


def test_sweep_rejects_unknown_preset(client):
    resp = client.post("/sweep", json={"preset": "fig10"})
    assert resp.status_code == 422
    assert "unknown preset" in resp.json()["detail"]


def test_sweep_rejects_bad_policy_token(client):
    resp = client.post("/sweep",
                       json={"preset": "fig7", "policies": ["gsm"]})
    assert resp.status_code == 422
    assert "unknown policy" in resp.json()["detail"]


# --------------------------------------------------------------------------
# Reference table
# --------------------------------------------------------------------------

def test_table4_default_grid(client):
    body = client.post("/table4", json={}).json()
    assert body["n_rows"] == 39
    lines = body["csv"].splitlines()
    assert lines[0] == "distance_m,rss_diff_db,m2p_m,p2m_m,radius_m"
    assert "250,-8,217.32,294.64,38.66" in lines
    assert "75,8,71.18,79.26,4.04" in lines


def test_table4_scoped_to_one_scenario(client):
    body = client.post(
        "/table4",
        json={"scenario": SCENARIO_250, "rss_diffs_db": [0.0]},
    ).json()
    assert body["n_rows"] == 1
    assert body["csv"].splitlines()[1].startswith("250,0,229.11,275.20")


def test_table4_custom_distances(client):
    body = client.post("/table4", json={"distances_m": [125.0],
                                        "rss_diffs_db": [0.0, 2.0]}).json()
    assert body["n_rows"] == 2
    assert body["csv"].splitlines()[1] == "125,0,114.72,137.37,11.32"


def test_table4_empty_grid_is_422(client):
    resp = client.post("/table4", json={"rss_diffs_db": []})
    assert resp.status_code == 200  # empty list falls back to the default grid
    resp = client.post("/table4", json={"distances_m": [-5.0]})
    assert resp.status_code == 422
