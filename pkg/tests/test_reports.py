"""Formatting and configuration: determinism and round-trip stability."""

import json
import math

import numpy as np
import pytest

from ringvar.reports import (
    ConfigError,
    complex_pairs,
    config_to_json,
    dump_json,
    ensemble_from_config,
    format_float,
    pairs_to_complex,
    parse_config,
    search_from_config,
)


class TestFormatFloat:
    def test_seventeen_significant_digits(self):
        assert format_float(1.0) == "1.0000000000000000e+00"
        assert format_float(math.pi) == "3.1415926535897931e+00"
        assert format_float(-1.5e-10) == "-1.5000000000000000e-10"

    def test_round_trips_doubles_exactly(self):
        rng = np.random.default_rng(0)
        for x in rng.standard_normal(200) * 10.0 ** rng.integers(-200, 200, 200):
            assert float(format_float(float(x))) == float(x)

    def test_negative_zero_normalised(self):
        assert format_float(-0.0) == format_float(0.0)


class TestDumpJson:
    def test_is_valid_json_and_deterministic(self):
        obj = {
            "a": 1,
            "b": [1.5, None, True, False],
            "c": {"nested": "text", "x": 0.1},
        }
        text = dump_json(obj)
        assert text == dump_json(obj)
        parsed = json.loads(text)
        assert parsed["a"] == 1
        assert parsed["b"][0] == 1.5
        assert parsed["c"]["nested"] == "text"

    def test_non_finite_floats_become_null(self):
        parsed = json.loads(dump_json({"x": math.inf, "y": math.nan}))
        assert parsed["x"] is None and parsed["y"] is None

    def test_complex_pairs_round_trip(self):
        values = np.array([1 + 2j, -0.5j])
        pairs = complex_pairs(values)
        assert pairs == [[1.0, 2.0], [0.0, -0.5]]
        np.testing.assert_array_equal(pairs_to_complex(pairs), values)


class TestParseConfig:
    def test_round_trip_identity(self):
        data = {
            "length": 6.283185307179586,
            "grid_points": 64,
            "kind": "band_limited_random",
            "band_limit": 8,
            "count": 3,
            "seed": 17,
            "out": "rows.csv",
            "format": "csv",
        }
        cfg = parse_config(data, "verify")
        text = config_to_json(cfg)
        again = parse_config(json.loads(text), "verify")
        assert again == cfg
        assert config_to_json(again) == text

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError):
            parse_config({"kind": "momentum_eigenstate", "mode_number": 1, "bogus": 2}, "verify")

    def test_type_errors(self):
        with pytest.raises(ConfigError):
            parse_config({"kind": "momentum_eigenstate", "mode_number": 1, "grid_points": 64.5}, "verify")
        with pytest.raises(ConfigError):
            parse_config({"kind": "momentum_eigenstate", "mode_number": 1, "length": float("inf")}, "verify")

    def test_grid_and_floor_preconditions(self):
        with pytest.raises(ConfigError):
            parse_config({"kind": "momentum_eigenstate", "mode_number": 1, "grid_points": 6}, "verify")
        with pytest.raises(ConfigError):
            parse_config({"denominator_floor": 0.0}, "extremal")

    def test_verify_requires_kind(self):
        with pytest.raises(ConfigError):
            parse_config({}, "verify")

    def test_ensemble_and_search_builders(self):
        cfg = parse_config(
            {"kind": "wrapped_gaussian", "center": 0.1, "sigma": 0.05, "count": 2},
            "profile",
        )
        spec = ensemble_from_config(cfg)
        assert spec.sigma == 0.05
        scfg = search_from_config(parse_config({"restarts": 3, "band_limit": 5}, "extremal"))
        assert scfg.restarts == 3 and scfg.band_limit == 5

    def test_ansatz_coefficients_pairs(self):
        cfg = parse_config(
            {"kind": "fourier_ansatz", "coefficients": [[1.0, 0.0], [0.5, -0.5], [0.0, 0.1]]},
            "profile",
        )
        spec = ensemble_from_config(cfg)
        assert spec.coefficients.shape == (3,)
        assert spec.coefficients[1] == 0.5 - 0.5j
