# SPDX-FileCopyrightText: 2025 Yannick Kees
# SPDX-FileCopyrightText: 2026 Yannick Kees
#
# SPDX-License-Identifier: MIT
"""Load and validate JSON run configurations."""

import json
from pathlib import Path

from pydantic import ValidationError

from ..models.schemas import RunConfig
from ..utils.errors import ConfigError
from ..utils.logger import setup_logger

logger = setup_logger(__name__)


def load_run_config(path: Path | None) -> RunConfig:
    """
    Load a run configuration from a JSON file.

    Args:
        path: Path to the JSON file (None = all defaults)

    Returns:
        Validated RunConfig

    Raises:
        ConfigError: If the file is missing, is not valid JSON or fails validation
    """
    if path is None:
        return RunConfig()

    path = Path(path)
    if not path.exists():
        raise ConfigError(f"Config file not found: {path}")

    logger.info(f"Loading run configuration from {path}")

    try:
        with Path.open(path) as f:
            raw = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Config file {path} is not valid JSON: {e}") from e

    return parse_run_config(raw)


def parse_run_config(raw: dict) -> RunConfig:
    """
    Validate a decoded configuration mapping.

    Args:
        raw: Decoded JSON object

    Returns:
        RunConfig

    Raises:
        ConfigError: On unknown keys or out-of-range values
    """
    if not isinstance(raw, dict):
        raise ConfigError("Config root must be a JSON object")
    try:
        return RunConfig.model_validate(raw)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()
        )
        raise ConfigError(f"Invalid configuration: {problems}") from e


def apply_overrides(
    run_config: RunConfig,
    grid: int | None = None,
    state: str | None = None,
    position: str | None = None,
    output: Path | None = None,
) -> RunConfig:
    """
    Apply command-line flags on top of the file configuration.

    Args:
        run_config: Configuration from file
        grid: Quadrature grid points per axis
        state: State family name
        position: Position kind
        output: Output path

    Returns:
        New validated RunConfig

    Raises:
        ConfigError: If an override produces an invalid configuration
    """
    raw = run_config.model_dump()
    if grid is not None:
        raw["quadrature"]["grid_points_per_axis"] = grid
    if state is not None:
        raw["state"]["family"] = state
    if position is not None:
        raw["position"]["kind"] = position
    if output is not None:
        raw["output"] = str(output)
    return parse_run_config(raw)
