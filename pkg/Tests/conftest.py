# SPDX-FileCopyrightText: 2025 Yannick Kees
# SPDX-FileCopyrightText: 2026 Yannick Kees
#
# SPDX-License-Identifier: MIT
"""Shared fixtures."""

import numpy as np
import pytest

from src.models.schemas import PointMass, QuadratureSpec
from src.walk.coin import hadamard2, tensor


@pytest.fixture
def hh():
    """H⊗H coin."""
    return tensor(hadamard2(), hadamard2())


@pytest.fixture
def origin():
    """Walker localized at the origin."""
    return PointMass()


@pytest.fixture
def quad():
    """Small grid with one refinement, enough for the localized H⊗H walk."""
    return QuadratureSpec(grid_points_per_axis=64, max_refinements=1)


@pytest.fixture
def rng():
    """Seeded random generator."""
    return np.random.default_rng(1234)
