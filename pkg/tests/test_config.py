import json

import numpy as np
import pytest

from proxima import ConfigError, TableMap, builtin_problem, load_config, parse_config
from proxima.config import TWO_SEGMENT_EXAMPLE
from proxima.region import Box, FinitePointSet, Segment


def doc(**overrides):
    d = json.loads(json.dumps(TWO_SEGMENT_EXAMPLE))
    d.update(overrides)
    return d


def test_builtin_reproduces_example():
    p = builtin_problem("paper-example")
    assert isinstance(p.omega, Segment) and isinstance(p.delta, Segment)
    np.testing.assert_array_equal(p.map.omega_rule.A, [[1, 0], [0, -0.5]])
    np.testing.assert_array_equal(p.map.omega_rule.b, [2, 0])
    np.testing.assert_array_equal(p.map.delta_rule.A, [[1, 0], [0, -1 / 3]])
    np.testing.assert_array_equal(p.map.delta_rule.b, [-2, 0])
    assert p.seeds[0].tolist() == [-1, -0.5]
    assert p.options["eta"] == 0.95


def test_unknown_builtin():
    with pytest.raises(ConfigError):
        builtin_problem("nope")


@pytest.mark.parametrize("text,value", [("1/3", 1 / 3), ("-1/2", -0.5), (" 2 ", 2.0),
                                        ("0.25", 0.25)])
def test_fraction_strings(text, value):
    d = doc()
    d["map"]["omega_rule"]["b"] = [text, 0]
    assert parse_config(json.dumps(d)).map.omega_rule.b[0] == value


@pytest.mark.parametrize("bad", ["1/0", "one", True, None])
def test_bad_numbers(bad):
    d = doc()
    d["map"]["omega_rule"]["b"] = [bad, 0]
    with pytest.raises(ConfigError):
        parse_config(json.dumps(d))


@pytest.mark.parametrize("path", [(), ("space",), ("regions", "omega"), ("map",),
                                  ("map", "omega_rule"), ("options",),
                                  ("options", "tolerances")])
def test_unknown_keys_rejected(path):
    d = doc()
    node = d
    for key in path:
        node = node.setdefault(key, {})
    node["surprise"] = 1
    with pytest.raises(ConfigError, match="surprise"):
        parse_config(json.dumps(d))


def test_missing_key():
    d = doc()
    del d["map"]
    with pytest.raises(ConfigError, match="map"):
        parse_config(json.dumps(d))


def test_json_error_position():
    text = '{\n  "space": {"dim": 2,,}\n}'
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    assert info.value.line == 2
    assert info.value.column == 22  # the second comma


def test_load_config_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "absent.json")


def test_load_config_roundtrip(tmp_path):
    f = tmp_path / "p.json"
    f.write_text(json.dumps(TWO_SEGMENT_EXAMPLE))
    p = load_config(f)
    assert p.name == str(f)
    assert p.map(p.seeds[0]).tolist() == [1, 0.25]


def test_box_and_points_regions():
    d = {
        "space": {"dim": 2},
        "regions": {
            "omega": {"variant": "box", "lower_corner": [0, 0], "upper_corner": [1, 1]},
            "delta": {"variant": "points", "points": [[3, 0], [3, 1]]},
        },
        "map": {"omega_rule": {"A": [[0, 0], [0, 0]], "b": [3, 0]},
                "delta_rule": {"A": [[0, 0], [0, 0]], "b": [1, 0]}},
    }
    p = parse_config(json.dumps(d))
    assert isinstance(p.omega, Box) and isinstance(p.delta, FinitePointSet)
    assert not p.delta.convex


def test_table_map():
    d = {
        "space": {"dim": 2, "p": 3},
        "regions": {
            "omega": {"variant": "points", "points": [[0, 0]], "convex": True},
            "delta": {"variant": "points", "points": [[3, 4]], "convex": True},
        },
        "map": {"table": [[[0, 0], [3, 4]], [[3, 4], [0, 0]]]},
        "options": {"seeds": [[0, 0]]},
    }
    p = parse_config(json.dumps(d))
    assert isinstance(p.map, TableMap)
    assert p.space.p == 3
    assert p.map(p.seeds[0]).tolist() == [3, 4]


@pytest.mark.parametrize("mutate", [
    lambda d: d["space"].update(dim=0),
    lambda d: d["space"].update(p=1),
    lambda d: d["regions"]["omega"].update(variant="disk"),
    lambda d: d["regions"]["omega"].update(endpoint_b=[-1, "-1/2"]),
    lambda d: d["map"]["omega_rule"].update(A=[[1, 0]]),
    lambda d: d["options"].update(density=0),
    lambda d: d["options"].update(seeds=[[1, 2, 3]]),
])
def test_invalid_values(mutate):
    d = doc()
    mutate(d)
    with pytest.raises(ConfigError):
        parse_config(json.dumps(d))
