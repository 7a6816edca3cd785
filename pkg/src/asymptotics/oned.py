# SPDX-FileCopyrightText: 2025 Yannick Kees
# SPDX-FileCopyrightText: 2026 Yannick Kees
#
# SPDX-License-Identifier: MIT
"""
One-dimensional Hadamard walk reference and the two-walk additivity check.

The H⊗H walk factorizes into two independent Hadamard walks on the rotated
axes (kx − ky)/2 and (kx + ky)/2, so for separable coin states the 2D
entanglement is the sum of two 1D values.
"""

import math
from typing import NamedTuple

from ..models.schemas import PointMass, QuadratureSpec
from ..numerics.linalg import binary_entropy
from ..utils.errors import LinearAlgebraError
from ..utils.logger import setup_logger
from ..walk.coin import hadamard2, tensor
from ..walk.states import coin_separable
from .engine import asymptotic_entanglement

logger = setup_logger(__name__)

DELTA0 = (math.sqrt(2.0) - 1.0) / 2.0
B1 = (2.0 - math.sqrt(2.0)) / 4.0
# The radicand vanishes exactly at θ = −π/8, φ = 0.
_RADICAND_TOL = 1e-12


class AdditivityResult(NamedTuple):
    """Quadrature value, closed-form sum and their absolute difference."""

    lhs: float
    rhs: float
    gap: float


def oned_lambda(theta: float, phi: float) -> float:
    """
    Larger eigenvalue of the asymptotic 1D coin density.

    Args:
        theta: Mixing angle in [−π/2, π/2]
        phi: Relative phase in [−π, π]

    Returns:
        λ in [1/2, 1]
    """
    radicand = 1.0 - 4.0 * (DELTA0 - 2.0 * B1**2 * math.sin(4.0 * theta) * math.cos(phi))
    if radicand < -_RADICAND_TOL:
        raise LinearAlgebraError(f"Negative radicand {radicand:.3e} at θ={theta}, φ={phi}")
    return 0.5 * (1.0 + math.sqrt(max(radicand, 0.0)))


def oned_closed_form_cpe(theta: float, phi: float) -> float:
    """Asymptotic coin-position entanglement of the 1D Hadamard walk (bits)."""
    return binary_entropy(oned_lambda(theta, phi))


def additivity_check(
    theta1: float,
    phi1: float,
    theta2: float,
    phi2: float,
    quad: QuadratureSpec | None = None,
) -> AdditivityResult:
    """
    Compare the 2D quadrature for a separable coin with the sum of 1D closed forms.

    Args:
        theta1: First-qubit mixing angle
        phi1: First-qubit phase
        theta2: Second-qubit mixing angle
        phi2: Second-qubit phase
        quad: Quadrature settings

    Returns:
        AdditivityResult(lhs, rhs, gap)
    """
    coin = tensor(hadamard2(), hadamard2())
    chi = coin_separable(theta1, phi1, theta2, phi2)
    lhs = asymptotic_entanglement(coin, chi, PointMass(), quad).entropy
    rhs = oned_closed_form_cpe(theta1, phi1) + oned_closed_form_cpe(theta2, phi2)
    gap = abs(lhs - rhs)
    logger.debug(f"Additivity at ({theta1:.4f},{phi1:.4f};{theta2:.4f},{phi2:.4f}): gap {gap:.3e}")
    return AdditivityResult(lhs, rhs, gap)
