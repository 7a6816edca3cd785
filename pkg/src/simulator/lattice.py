# SPDX-FileCopyrightText: 2025 Yannick Kees
# SPDX-FileCopyrightText: 2026 Yannick Kees
#
# SPDX-License-Identifier: MIT
"""
Direct evolution of the 2D walk on a dense lattice.

Amplitudes are stored as an array f[j, x + R, y + R] for coin component j in
(LL, LR, RL, RR). Component LL moves to x − 1, LR to y + 1, RL to y − 1 and
RR to x + 1 after the coin is applied.
"""

from dataclasses import dataclass

import numpy as np

from ..asymptotics.engine import ReducedDensity
from ..models.schemas import PositionDistribution
from ..numerics.linalg import von_neumann_entropy
from ..utils.config import config
from ..utils.errors import PreconditionError
from ..utils.logger import setup_logger
from ..walk.coin import CoinOperator
from ..walk.states import CoinState, support

logger = setup_logger(__name__)

NORM_TOL = 1e-10


@dataclass(frozen=True)
class LatticeState:
    """Walker amplitudes after `step` steps on the square [−radius, radius]²."""

    step: int
    radius: int
    amplitudes: np.ndarray
    support_radius: int
    capacity: int

    @property
    def norm(self) -> float:
        """Σ |f_j(x, y)|²."""
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    @property
    def light_cone(self) -> int:
        """Largest |x| or |y| that may carry amplitude."""
        return self.support_radius + self.step

    def site_index(self, x: int, y: int) -> tuple[int, int]:
        """Array indices of lattice site (x, y)."""
        return x + self.radius, y + self.radius


def initialize(chi: CoinState, pos: PositionDistribution, n_max: int) -> LatticeState:
    """
    Place the product state |χ⟩ ⊗ Σ a(r)|r⟩ on a lattice large enough for n_max steps.

    Args:
        chi: Initial coin state
        pos: Finite-support position distribution
        n_max: Number of steps the lattice must accommodate

    Returns:
        LatticeState at step 0

    Raises:
        UnsupportedVariantError: For Gaussian or uniform positions
        PreconditionError: If n_max is negative
    """
    if n_max < 0:
        raise PreconditionError(f"n_max must be non-negative, got {n_max}")
    sites = support(pos)
    support_radius = max(max(abs(x), abs(y)) for (x, y), _ in sites)
    radius = support_radius + n_max
    size = 2 * radius + 1

    position = np.zeros((size, size), dtype=np.complex128)
    for (x, y), amplitude in sites:
        position[x + radius, y + radius] += amplitude
    amplitudes = chi.amplitudes[:, None, None] * position[None, :, :]

    return LatticeState(
        step=0,
        radius=radius,
        amplitudes=amplitudes,
        support_radius=support_radius,
        capacity=n_max,
    )


def step(state: LatticeState, coin: CoinOperator) -> LatticeState:
    """
    Apply one coin flip and conditional shift.

    Args:
        state: Current lattice state
        coin: 4x4 coin operator

    Returns:
        New LatticeState with step + 1

    Raises:
        PreconditionError: If the light cone would leave the lattice or the coin is not 4x4
    """
    if coin.dim != 4:
        raise PreconditionError(f"2D lattice needs a 4x4 coin, got {coin.dim}x{coin.dim}")
    if state.step >= state.capacity:
        raise PreconditionError(
            f"Lattice of radius {state.radius} cannot hold step {state.step + 1}",
        )

    mixed = np.einsum("ij,jxy->ixy", coin.matrix, state.amplitudes)
    shifted = np.zeros_like(mixed)
    shifted[0, :-1, :] = mixed[0, 1:, :]
    shifted[1, :, 1:] = mixed[1, :, :-1]
    shifted[2, :, :-1] = mixed[2, :, 1:]
    shifted[3, 1:, :] = mixed[3, :-1, :]

    return LatticeState(
        step=state.step + 1,
        radius=state.radius,
        amplitudes=shifted,
        support_radius=state.support_radius,
        capacity=state.capacity,
    )


def reduced_density_matrix(state: LatticeState) -> np.ndarray:
    """ρ_c(i, j) = Σ_r f_i(r) f_j*(r) without validation."""
    flat = state.amplitudes.reshape(4, -1)
    return flat @ flat.conj().T


def reduced_density(state: LatticeState) -> ReducedDensity:
    """Reduced coin density at the current step."""
    return ReducedDensity(reduced_density_matrix(state), {"step": state.step, "source": "lattice"})


def position_distribution(state: LatticeState) -> np.ndarray:
    """Probability of each site, indexed [x + R, y + R]."""
    return np.sum(np.abs(state.amplitudes) ** 2, axis=0)


def evolve(
    chi: CoinState,
    pos: PositionDistribution,
    coin: CoinOperator,
    n_steps: int,
) -> LatticeState:
    """Lattice state after n_steps."""
    state = initialize(chi, pos, n_steps)
    for _ in range(n_steps):
        state = step(state, coin)
    return state


def entanglement_trajectory(
    chi: CoinState,
    pos: PositionDistribution,
    coin: CoinOperator,
    n_max: int,
) -> list[tuple[int, float]]:
    """
    Coin-position entanglement E(n) for n = 0..n_max.

    Args:
        chi: Initial coin state
        pos: Finite-support position distribution
        coin: 4x4 coin
        n_max: Last step

    Returns:
        List of (n, E(n))

    Raises:
        PreconditionError: If the norm drifts beyond tolerance
    """
    logger.info(f"Simulating {n_max} steps of coin '{coin.label}' from state {chi.label}")
    state = initialize(chi, pos, n_max)
    trajectory = [(0, von_neumann_entropy(reduced_density_matrix(state)))]
    for n in range(1, n_max + 1):
        state = step(state, coin)
        if abs(state.norm - 1.0) > NORM_TOL:
            raise PreconditionError(f"Norm drifted to {state.norm:.15f} at step {n}")
        trajectory.append((n, von_neumann_entropy(reduced_density_matrix(state))))
        if n % 50 == 0:
            logger.debug(f"  step {n}: E={trajectory[-1][1]:.6f}")
    return trajectory


def window_mean(trajectory: list[tuple[int, float]], start: int, stop: int) -> float:
    """
    Mean of E(n) over start ≤ n ≤ stop.

    Args:
        trajectory: List of (n, E(n))
        start: First step included
        stop: Last step included

    Returns:
        Window mean

    Raises:
        PreconditionError: If the window holds no steps
    """
    values = [e for n, e in trajectory if start <= n <= stop]
    if not values:
        raise PreconditionError(f"No trajectory points in window [{start}, {stop}]")
    return float(np.mean(values))


def final_window_mean(trajectory: list[tuple[int, float]], window: int | None = None) -> float:
    """Mean of the last `window` + 1 points of a trajectory."""
    width = config.WINDOW if window is None else window
    last = trajectory[-1][0]
    return window_mean(trajectory, max(0, last - width), last)
