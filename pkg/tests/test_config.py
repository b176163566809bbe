import json

import pytest

from fuzzytemporal.config import Config
from fuzzytemporal.errors import InvalidDegree, SchemaError
from fuzzytemporal.ite import DEFAULT_W
from fuzzytemporal.temporal import Duration, Granularity, parse_instant


def test_defaults():
    config = Config()
    assert config.default_w == DEFAULT_W == 0.5
    assert config.max_iterations == 1000
    assert config.fuzzy_counts["few"].midpoint == 3


def test_from_dict_merges_over_defaults():
    config = Config.from_dict({
        "default_w": 0.4,
        "fuzzy_counts": {"few": [3, 5], "Next": {"lo": 1, "hi": 1, "offset": 2}},
        "fuzzy_granularities": {"sprint": "14 days", "dusk": {"expansion": "19 hours",
                                                              "clock": True}},
        "deictic_window": "3 days",
        "now": "2020-01-15T00:00:00Z",
    })
    assert config.default_w == 0.4
    assert config.fuzzy_counts["few"].midpoint == 4
    assert config.fuzzy_counts["next"].offset == 2
    assert "several" in config.fuzzy_counts
    assert config.fuzzy_granularities["sprint"].expansion == Duration(14, Granularity.DAYS)
    assert config.fuzzy_granularities["dusk"].clock
    assert config.deictic_window == Duration(3, Granularity.DAYS)
    assert config.now == parse_instant("2020-01-15")


@pytest.mark.parametrize("data", [
    {"defualt_w": 0.4},
    {"fuzzy_counts": {"few": [5, 2]}},
    {"deictic_window": "a while"},
    {"now": "soon"},
    [],
])
def test_bad_config(data):
    with pytest.raises(SchemaError):
        Config.from_dict(data)


def test_weight_validated():
    with pytest.raises(InvalidDegree):
        Config(default_w=0)


def test_load(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"default_w": 0.7}))
    assert Config.load(path).default_w == 0.7
    path.write_text("{not json")
    with pytest.raises(SchemaError):
        Config.load(path)


def test_pinned_clock():
    now = parse_instant("2020-01-15")
    assert Config(now=now).current_time() == now
