# SPDX-FileCopyrightText: 2025 Yannick Kees
# SPDX-FileCopyrightText: 2026 Yannick Kees
#
# SPDX-License-Identifier: MIT
"""Tests for run-configuration loading."""

import json
import math

import pytest

from src.data.config_loader import apply_overrides, load_run_config, parse_run_config
from src.models.schemas import RunConfig, TwoSiteSeparable
from src.utils.errors import ConfigError


def test_defaults_without_file():
    """No file means all defaults."""
    run_config = load_run_config(None)
    assert run_config == RunConfig()
    assert run_config.coin.kind == "hadamard2x2"
    assert run_config.state.family == "LL"
    assert run_config.sweep is None


def test_load_from_file(tmp_path):
    """Angles are read in units of π and converted on use."""
    path = tmp_path / "run.json"
    path.write_text(
        json.dumps({"position": {"kind": "two-site-separable", "alpha": 0.25, "beta": -0.5}}),
    )
    position = load_run_config(path).position.to_distribution()
    assert isinstance(position, TwoSiteSeparable)
    assert position.alpha == pytest.approx(math.pi / 4)
    assert position.beta == pytest.approx(-math.pi / 2)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_run_config(tmp_path / "missing.json")


def test_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("[1, 2")
    with pytest.raises(ConfigError):
        load_run_config(path)


@pytest.mark.parametrize(
    "raw",
    [
        [],
        {"extra": True},
        {"state": {"family": "GHZ"}},
        {"coin": {"kind": "pauli"}},
        {"position": {"kind": "point", "alpha": 0.9}},
        {"quadrature": {"offset_fraction": 1.0}},
        {"simulation": {"steps": -1}},
        {
            "state": {"family": "II"},
            "sweep": {"axes": [{"name": "alpha", "min": 0.0, "max": 0.25, "count": 3}]},
        },
        {
            "state": {"family": "bell-psi-plus"},
            "sweep": {"axes": [{"name": "theta", "min": 0.0, "max": 0.25, "count": 3}]},
        },
    ],
)
def test_invalid_configs(raw):
    """Schema violations become configuration errors naming the field."""
    with pytest.raises(ConfigError):
        parse_run_config(raw)


def test_overrides_revalidate():
    """Command-line overrides replace file values and are validated."""
    run_config = apply_overrides(RunConfig(), grid=32, state="bell-psi-minus", position="uniform")
    assert run_config.quadrature.grid_points_per_axis == 32
    assert run_config.state.family == "bell-psi-minus"
    assert run_config.position.kind == "uniform"
    with pytest.raises(ConfigError):
        apply_overrides(RunConfig(), grid=20)


def test_sweep_axes_follow_state_and_position():
    """Swept axes must act on the state family or position kind, also after overrides."""
    run_config = parse_run_config(
        {
            "state": {"family": "III"},
            "position": {"kind": "two-site-entangled"},
            "sweep": {
                "axes": [
                    {"name": "phi", "min": 0.0, "max": 0.5, "count": 2},
                    {"name": "beta", "min": 0.0, "max": 0.5, "count": 2},
                ],
            },
        },
    )
    assert [a.name for a in run_config.sweep.axes] == ["phi", "beta"]
    assert apply_overrides(run_config, state="II").state.family == "II"
    with pytest.raises(ConfigError, match="phi"):
        apply_overrides(run_config, state="LL")
    with pytest.raises(ConfigError, match="beta"):
        apply_overrides(run_config, position="point")
