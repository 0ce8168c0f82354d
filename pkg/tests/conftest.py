import json
import math
import os

import numpy as np
import pytest

from dubins_intercept.motion import ControlSchedule

SEED = int(os.environ.get("DUBINS_INTERCEPT_SEED", "20240517"))


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture
def write_scenario(tmp_path):
    def _write(doc, name="scenario.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc, indent=2) if isinstance(doc, dict) else doc)
        return path

    return _write


def random_schedule(rng, kind: str) -> tuple[ControlSchedule, float]:
    """A schedule whose last arc is shorter than 2π, with its end time"""
    s = int(rng.choice([-1, 1]))
    tau1 = float(rng.uniform(0.0, 2.0 * math.pi))
    final = float(rng.uniform(0.0, 2.0 * math.pi))
    if kind == "CSC":
        sigma = int(rng.choice([-1, 1]))
        tau2 = tau1 + float(rng.uniform(0.0, 4.0))
        return ControlSchedule.csc(s, sigma, tau1, tau2), tau2 + final
    tau2 = tau1 + float(rng.uniform(0.05, 2.0 * math.pi - 0.05))
    return ControlSchedule.ccc(s, tau1, tau2), tau2 + final
