# SPDX-FileCopyrightText: 2025 Yannick Kees
# SPDX-FileCopyrightText: 2026 Yannick Kees
#
# SPDX-License-Identifier: MIT
"""Application configuration."""

import os
from dataclasses import dataclass, field
from pathlib import Path


def _env_workers() -> int:
    """Read the default worker count from the environment."""
    raw = os.environ.get("QWALK_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass
class Config:
    """Application configuration settings."""

    # Paths
    PROJECT_ROOT: Path = Path(__file__).parent.parent.parent
    OUTPUT_DIR: Path = PROJECT_ROOT / "output"

    # Quadrature defaults
    DEFAULT_GRID: int = 512
    DEFAULT_OFFSET: float = 0.5  # midpoint grid
    REFINE_TOL: float = 1e-8
    MAX_REFINEMENTS: int = 3
    CHUNK_SIZE: int = 65536  # k-points per partial sum

    # Linear algebra tolerances
    DEGENERACY_TOL: float = 1e-9  # radians
    EIG_FLOOR: float = 1e-10
    HERMITIAN_TOL: float = 1e-10
    UNITARY_TOL: float = 1e-10
    TRACE_TOL: float = 1e-8
    JACOBI_TOL: float = 1e-14
    JACOBI_MAX_SWEEPS: int = 50
    CLOSED_FORM_MIN_NORM: float = 1e-6

    # Uniform limit
    UNIFORM_DIRECTIONS: int = 16

    # Constant eigenphase gaps
    GAP_GRID: int = 32  # points per axis of the scan
    GAP_SHARE: float = 0.9  # fraction of k-points a gap must appear at

    # Simulator
    WINDOW: int = 10

    # Validation
    VALIDATION_GRID: int = 256

    # Parallelism
    DEFAULT_WORKERS: int = field(default_factory=_env_workers)

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    # Config-file vocabulary
    SUPPORTED_COINS: frozenset[str] = frozenset(
        {"hadamard2x2", "grover4", "dft4", "identity4", "custom"},
    )


# Global configuration instance
config = Config()
