#!/usr/bin/env python3
"""Record scenario-service responses as frontend test fixtures.

Drives the FastAPI app in-process and writes frontend/test/fixtures.json:
20 randomized explorer control states with their exact /v1/evaluate
responses, the central/global preset, a coverage-surface sample with
pointwise spot checks, and a latitude-sweep sample in both JSON and CSV
forms. The explorer's tests then verify that every number it would
display equals the recorded service output exactly.
"""

import json
import random
from pathlib import Path

from fastapi.testclient import TestClient

from pvtrade.service import create_app

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "frontend" / "test" / "fixtures.json"

DEFAULT_PV = {
    "capexGen": 500,
    "lifetimeGen": 30,
    "capexSto": 200,
    "lifetimeSto": 15,
    "discountRate": 0.05,
}

ALL_REGIMES = ["autarky", "east_west", "north_south", "global"]


def base_state():
    return {
        "mode": "w",
        "w": 2,
        "latitude": 30,
        "k": 0.79,
        "ratio": 0.6,
        "scenario": "central",
        "pv": dict(DEFAULT_PV),
        "estar": 1515,
        "regimes": ["autarky", "north_south"],
        "tab": "scenario",
        "surfaceRes": 100,
        "sweepStep": 1,
        "pins": [],
    }


def to_request(state):
    """Mirror of the explorer's state -> request mapping."""
    body = {"regimes": list(state["regimes"])}
    if state["mode"] == "w":
        body["w"] = state["w"]
        body["k"] = state["k"]
        body["ratio"] = state["ratio"]
    else:
        body["latitude"] = state["latitude"]
        body["scenario"] = state["scenario"]
        if state["pv"] != DEFAULT_PV:
            pv = state["pv"]
            body["pv"] = {
                "capex_gen": pv["capexGen"],
                "lifetime_gen": pv["lifetimeGen"],
                "capex_sto": pv["capexSto"],
                "lifetime_sto": pv["lifetimeSto"],
                "discount_rate": pv["discountRate"],
            }
        if state["estar"] != 1515:
            body["estar"] = state["estar"]
    return body


def random_state(rng):
    state = base_state()
    if rng.random() < 0.5:
        state["mode"] = "w"
        state["w"] = round(rng.uniform(0.0, 10.0), 2)
        state["k"] = round(rng.uniform(0.0, 1.0), 3)
        state["ratio"] = round(rng.uniform(0.05, 1.5), 3)
        pool = ["autarky", "north_south"]
        state["regimes"] = rng.sample(pool, rng.randint(1, len(pool)))
    else:
        state["mode"] = "latitude"
        state["latitude"] = rng.randint(-55, 55)
        state["scenario"] = rng.choice(["central", "high", "median", "low"])
        state["regimes"] = sorted(
            rng.sample(ALL_REGIMES, rng.randint(1, 4)), key=ALL_REGIMES.index
        )
        if rng.random() < 0.3:
            state["pv"] = dict(DEFAULT_PV, capexGen=rng.choice([300, 400, 700]))
        if rng.random() < 0.3:
            state["estar"] = rng.choice([1400, 1515, 1800])
    return state


def main():
    client = TestClient(create_app())
    rng = random.Random(20260810)

    evaluate_fixtures = []
    states = [random_state(rng) for _ in range(20)]
    preset = base_state()
    preset.update(mode="latitude", latitude=30, scenario="central", regimes=list(ALL_REGIMES))
    states.append(preset)
    for state in states:
        request = to_request(state)
        response = client.post("/v1/evaluate", json=request)
        response.raise_for_status()
        evaluate_fixtures.append(
            {"state": state, "request": request, "response": response.json()}
        )

    surface_params = {"w": 2.0, "k_steps": 9, "ratio_steps": 9}
    surface = client.get("/v1/surface", params=surface_params).json()
    spot_checks = []
    for k_index, ratio_index in [(0, 0), (4, 4), (8, 8), (2, 6)]:
        point = client.post(
            "/v1/evaluate",
            json={
                "w": surface["w"],
                "k": surface["k_values"][k_index],
                "ratio": surface["ratio_values"][ratio_index],
                "regimes": ["autarky"],
            },
        ).json()
        spot_checks.append(
            {"k_index": k_index, "ratio_index": ratio_index, "response": point}
        )

    sweep_json = client.get(
        "/v1/latitude-sweep", params={"scenario": "central", "step": 5.0}
    ).json()
    sweep_csv = client.get(
        "/v1/latitude-sweep", params={"scenario": "central", "step": 5.0, "format": "csv"}
    ).text

    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(
        json.dumps(
            {
                "evaluate": evaluate_fixtures,
                "surface": {
                    "params": surface_params,
                    "response": surface,
                    "spot_checks": spot_checks,
                },
                "sweep": {"scenario": "central", "step": 5.0, "response": sweep_json},
                "sweep_csv": {"scenario": "central", "step": 5.0, "content": sweep_csv},
            },
            indent=1,
        )
    )
    print(f"wrote {OUT} ({len(evaluate_fixtures)} evaluate fixtures)")


if __name__ == "__main__":
    main()
