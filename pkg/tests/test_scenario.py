import logging
import math

import pytest

from dubins_intercept.config import InterceptConfig, OracleSettings, SolverSettings
from dubins_intercept.errors import DomainError, ScenarioError, UnknownTargetKindError
from dubins_intercept.geometry import Configuration
from dubins_intercept.scenario import load_scenario, parse_scenario, scenario_dict
from dubins_intercept.targets import MirroredTarget, SampledTarget, WindGoalTarget, static_target

AHEAD = {"kind": "static", "x": 0.0, "y": 4.0, "phi": math.pi / 2}


def test_load_scenario(write_scenario):
    path = write_scenario(
        {
            "description": "resting ahead",
            "horizon": 12.0,
            "target": AHEAD,
            "solver": {"scan_step": 0.002, "families": ["LSL", "RSR"]},
            "oracle": {"t_step": 0.05},
        }
    )
    scenario = load_scenario(path)
    assert scenario.description == "resting ahead"
    assert scenario.horizon == 12.0
    assert scenario.target(3.0) == Configuration(0.0, 4.0, math.pi / 2)
    assert scenario.solver == {"scan_step": 0.002, "families": ["LSL", "RSR"]}
    assert scenario.oracle == {"t_step": 0.05}
    assert scenario.path == path


def test_json_error_line(tmp_path):
    text = '{\n  "target": {"kind": "static", "x": 0, "y": 4, "phi": 1.5},\n  "horizon": ,\n}\n'
    with pytest.raises(ScenarioError) as info:
        parse_scenario(text, tmp_path / "broken.json")
    assert info.value.line == 3
    assert str(info.value).startswith(f"{tmp_path / 'broken.json'}:3:")


def test_unknown_target_kind(write_scenario):
    path = write_scenario({"target": {"kind": "teleporting"}})
    with pytest.raises(UnknownTargetKindError) as info:
        load_scenario(path)
    assert info.value.line == 2
    assert "teleporting" in info.value.reason


@pytest.mark.parametrize(
    "doc,reason",
    [
        ({"horizon": 5.0}, "requires a 'target'"),
        ({"target": {"x": 1.0}}, "requires a 'kind'"),
        ({"target": {"kind": "linear", "x": 0, "y": 0, "phi": 0, "vx": 1}}, "requires vy"),
        ({"target": {"kind": "static", "x": "one", "y": 0, "phi": 0}}, "must be a number"),
        ({"target": {**AHEAD, "mirror": "yes"}}, "'mirror' must be true or false"),
        ({"target": AHEAD, "horizon": -1.0}, "'horizon' must be positive"),
        ({"target": AHEAD, "horizon": "long"}, "'horizon' must be a number"),
        ({"target": AHEAD, "solver": {"step": 0.1}}, "unknown solver setting(s) step"),
        ({"target": AHEAD, "oracle": {"exhaustive": 1}}, "'exhaustive' must be true or false"),
        ({"target": AHEAD, "solver": {"families": "LSL"}}, "'families' must be a list"),
        ({"target": {"kind": "circular", "cx": 0, "cy": 0, "r": 0, "omega": 1}}, "radius"),
        ({"target": {"kind": "track"}}, "requires 'path' or 'samples'"),
    ],
)
def test_invalid_scenarios(write_scenario, doc, reason):
    with pytest.raises(ScenarioError) as info:
        load_scenario(write_scenario(doc))
    assert reason in info.value.reason


def test_missing_file(tmp_path):
    with pytest.raises(ScenarioError) as info:
        load_scenario(tmp_path / "absent.json")
    assert info.value.line == 1


def test_unknown_top_level_key_warns(write_scenario, caplog):
    scenario = load_scenario(write_scenario({"target": AHEAD, "colour": "red"}))
    assert scenario.horizon is None
    assert "ignoring unknown key 'colour'" in caplog.text


def test_mirror_flag(write_scenario):
    scenario = load_scenario(write_scenario({"target": {**AHEAD, "x": 1.0, "mirror": True}}))
    assert isinstance(scenario.target, MirroredTarget)
    c = scenario.target(0.0)
    assert (c.x, c.y, c.phi) == pytest.approx((-1.0, 4.0, math.pi / 2))


def test_track_file_relative_to_scenario(tmp_path, write_scenario):
    (tmp_path / "track.csv").write_text("t,x,y,phi\n0,0,5,0\n2,2,5,0\n")
    scenario = load_scenario(write_scenario({"target": {"kind": "track", "path": "track.csv"}}))
    assert isinstance(scenario.target, SampledTarget)
    assert scenario.target(1.0).x == pytest.approx(1.0)


def test_bad_track_file_line(tmp_path, write_scenario):
    (tmp_path / "track.csv").write_text("t,x,y,phi\n0,0,5,0\n1,1,five,0\n")
    with pytest.raises(ScenarioError) as info:
        load_scenario(write_scenario({"target": {"kind": "track", "path": "track.csv"}}))
    assert info.value.line == 3
    assert info.value.path.endswith("track.csv")


def test_inline_track_samples(write_scenario):
    scenario = load_scenario(
        write_scenario({"target": {"kind": "track", "samples": [[0, 0, 5, 0], [1, 1, 5, 0]]}})
    )
    assert scenario.target(0.5).x == pytest.approx(0.5)


def test_sinusoidal_wind(write_scenario):
    doc = {
        "target": {
            "kind": "wind",
            "goal": {"x": 2.0, "y": 3.0, "phi": 0.3},
            "wind": {"kind": "sinusoidal", "mean": [0.1, 0.0], "amplitude": [0.0, 0.2], "omega": 1.5},
        }
    }
    scenario = load_scenario(write_scenario(doc))
    assert isinstance(scenario.target, WindGoalTarget)
    c = scenario.target(0.0)
    assert (c.x, c.y, c.phi) == pytest.approx((2.0, 3.0, 0.3))


def test_unknown_wind_kind(write_scenario):
    doc = {"target": {"kind": "wind", "goal": {"x": 0, "y": 0, "phi": 0}, "wind": {"kind": "gusty"}}}
    with pytest.raises(ScenarioError) as info:
        load_scenario(write_scenario(doc))
    assert "gusty" in info.value.reason


def test_scenario_dict_reloads(write_scenario):
    doc = scenario_dict(static_target(Configuration(1.0, 2.0, 0.5)), horizon=9.0, description="saved")
    scenario = load_scenario(write_scenario(doc))
    assert scenario.target(0.0) == Configuration(1.0, 2.0, 0.5)
    assert scenario.horizon == 9.0


def test_config_precedence(caplog):
    caplog.set_level(logging.DEBUG, logger="DubinsIntercept")
    config = InterceptConfig(
        scenario_solver={"scan_step": 0.01, "root_tol": 1e-8},
        scenario_oracle={"heading_tol": 0.1},
        scenario_horizon=20.0,
        horizon=30.0,
        tol=1e-5,
        oracle_step=0.05,
        families=("LSL",),
    )
    assert config.solver == SolverSettings(
        horizon=30.0, scan_step=0.01, root_tol=1e-8, interception_tol=1e-5, families=("LSL",)
    )
    assert config.oracle == OracleSettings(tau_step=0.05, t_step=0.05, heading_tol=0.1, horizon=30.0)
    assert "User-provided horizon 30.0" in caplog.text
    assert "Scenario-provided scan_step 0.01" in caplog.text
    assert "Default value_tol" in caplog.text


def test_config_scenario_horizon():
    config = InterceptConfig(scenario_horizon=20.0, scenario_oracle={"horizon": 15.0})
    assert config.solver.horizon == 20.0
    assert config.oracle.horizon == 15.0
    assert config.with_horizon(5.0).oracle.horizon == 5.0


def test_config_rejects_bad_values():
    with pytest.raises(DomainError):
        InterceptConfig(scan_step=-0.1)


@pytest.mark.parametrize("literal", ["NaN", "Infinity", "-Infinity"])
def test_non_finite_target_field(tmp_path, literal):
    text = f'{{\n  "target": {{"kind": "static", "x": {literal}, "y": 4, "phi": 1.5}}\n}}\n'
    with pytest.raises(ScenarioError) as info:
        parse_scenario(text, tmp_path / "scenario.json")
    assert info.value.line == 2
    assert "'x' must be finite" in info.value.reason


def test_non_finite_wind_and_settings(tmp_path):
    wind = '{\n  "target": {"kind": "wind", "goal": {"x": 0, "y": 0, "phi": 0},\n    "wind": {"kind": "sinusoidal", "mean": [NaN, 0], "omega": 1}}\n}\n'
    with pytest.raises(ScenarioError) as info:
        parse_scenario(wind, tmp_path / "wind.json")
    assert info.value.line == 2
    assert "two finite numbers" in info.value.reason
    settings = '{\n  "target": {"kind": "static", "x": 0, "y": 4, "phi": 1.5},\n  "solver": {"scan_step": Infinity}\n}\n'
    with pytest.raises(ScenarioError) as info:
        parse_scenario(settings, tmp_path / "settings.json")
    assert info.value.line == 3
    with pytest.raises(ScenarioError) as info:
        parse_scenario('{"target": {"kind": "track", "samples": [[0, 0, 5, 0], [1, NaN, 5, 0]]}}', tmp_path / "s.json")
    assert "finite" in info.value.reason


def test_non_finite_track_row(tmp_path, write_scenario):
    (tmp_path / "track.csv").write_text("t,x,y,phi\n0,0,5,0\n1,1,5,0\n2,inf,5,0\n")
    with pytest.raises(ScenarioError) as info:
        load_scenario(write_scenario({"target": {"kind": "track", "path": "track.csv"}}))
    assert info.value.line == 4
    assert "non-finite" in info.value.reason


def test_invalid_utf8_scenario(tmp_path):
    path = tmp_path / "scenario.json"
    path.write_bytes(b'{\n  "description": "caf\xe9",\n  "target": {"kind": "static", "x": 0, "y": 4, "phi": 1.5}\n}\n')
    with pytest.raises(ScenarioError) as info:
        load_scenario(path)
    assert info.value.line == 2
    assert "not valid UTF-8" in info.value.reason


def test_invalid_utf8_track(tmp_path, write_scenario):
    (tmp_path / "track.csv").write_bytes(b"t,x,y,phi\n0,0,5,0\n\xff\xfe\x00\n")
    with pytest.raises(ScenarioError) as info:
        load_scenario(write_scenario({"target": {"kind": "track", "path": "track.csv"}}))
    assert info.value.path.endswith("track.csv")
    assert info.value.line == 3
