# SPDX-FileCopyrightText: 2025 Yannick Kees
# SPDX-FileCopyrightText: 2026 Yannick Kees
#
# SPDX-License-Identifier: MIT
"""One-dimensional coined walk on a line (L moves to x − 1, R to x + 1)."""

from dataclasses import dataclass

import numpy as np

from ..numerics.linalg import von_neumann_entropy
from ..utils.errors import PreconditionError
from ..utils.logger import setup_logger
from ..walk.coin import CoinOperator

logger = setup_logger(__name__)


@dataclass
class LineWalkResult:
    """Position distribution after n_max steps and the entanglement trajectory."""

    distribution: np.ndarray  # P(x) indexed x + n_max
    trajectory: list[tuple[int, float]]

    @property
    def radius(self) -> int:
        """Largest |x| on the lattice."""
        return (len(self.distribution) - 1) // 2


def simulate_line(chi2, coin2: CoinOperator, n_max: int) -> LineWalkResult:
    """
    Run the 1D walk from the origin.

    Args:
        chi2: Normalized one-qubit coin amplitudes (L, R)
        coin2: 2x2 coin
        n_max: Number of steps

    Returns:
        LineWalkResult

    Raises:
        PreconditionError: If the coin is not 2x2 or chi2 is not normalized
    """
    if coin2.dim != 2:
        raise PreconditionError(f"Line walk needs a 2x2 coin, got {coin2.dim}x{coin2.dim}")
    chi = np.asarray(chi2, dtype=np.complex128).reshape(-1)
    if chi.shape != (2,) or abs(np.vdot(chi, chi).real - 1.0) > 1e-12:
        raise PreconditionError("Line walk needs a normalized 2-component coin state")
    if n_max < 0:
        raise PreconditionError(f"n_max must be non-negative, got {n_max}")

    amplitudes = np.zeros((2, 2 * n_max + 1), dtype=np.complex128)
    amplitudes[:, n_max] = chi

    def entropy() -> float:
        return von_neumann_entropy(amplitudes @ amplitudes.conj().T)

    trajectory = [(0, entropy())]
    for n in range(1, n_max + 1):
        mixed = coin2.matrix @ amplitudes
        amplitudes = np.zeros_like(mixed)
        amplitudes[0, :-1] = mixed[0, 1:]
        amplitudes[1, 1:] = mixed[1, :-1]
        trajectory.append((n, entropy()))

    return LineWalkResult(np.sum(np.abs(amplitudes) ** 2, axis=0), trajectory)
