# SPDX-FileCopyrightText: 2025 Yannick Kees
# SPDX-FileCopyrightText: 2026 Yannick Kees
#
# SPDX-License-Identifier: MIT
"""
Fourier-space one-step operator U_k and its spectral data.

Coin component j is displaced by (−1,0), (0,1), (0,−1), (1,0) for j = LL, LR,
RL, RR. Row j of U_k is the matching phase times row j of the coin, so U_k
propagates amplitudes transformed as ψ̃(k) = Σ_r e^{ik·r} ψ(r).
"""

from dataclasses import dataclass

import numpy as np

from ..models.schemas import WaveVector
from ..numerics.linalg import (
    ComplexMatrix,
    SpectralDecomposition,
    angular_distance,
    spectral_from_eigensystem,
    unitary_eigen,
    unitary_eigen_batch,
)
from ..utils.config import config
from ..utils.errors import DegeneratePointError, PreconditionError
from .coin import CoinOperator

_RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class HadamardSpectrumClosedForm:
    """Closed-form eigenphases of U_k for the H⊗H coin."""

    omega_plus: float
    omega_minus: float
    delta_k: float

    @property
    def phases(self) -> tuple[float, float, float, float]:
        """Phase set (ω₊, −ω₊, ω₋, −ω₋)."""
        return self.omega_plus, -self.omega_plus, self.omega_minus, -self.omega_minus


def kgrid(m: int, offset: float) -> np.ndarray:
    """
    Points of the uniform periodic grid on [−π, π).

    Args:
        m: Number of points
        offset: Shift in units of the spacing

    Returns:
        Array of m wave-vector components
    """
    return -np.pi + (np.arange(m) + offset) * (2.0 * np.pi / m)


def shift_phases(kx, ky) -> np.ndarray:
    """Phase factors (e^{−ikx}, e^{iky}, e^{−iky}, e^{ikx}), stacked on the last axis."""
    kx = np.asarray(kx, dtype=np.float64)
    ky = np.asarray(ky, dtype=np.float64)
    return np.exp(1j * np.stack([-kx, ky, -ky, kx], axis=-1))


def build_uk(coin: CoinOperator, k: WaveVector) -> ComplexMatrix:
    """
    One-step operator in Fourier space.

    Args:
        coin: Two-qubit coin
        k: Wave vector

    Returns:
        Unitary 4x4 matrix U_k

    Raises:
        PreconditionError: If the coin is not 4x4
    """
    if coin.dim != 4:
        raise PreconditionError(f"build_uk needs a 4x4 coin, got {coin.dim}x{coin.dim}")
    return shift_phases(k.kx, k.ky)[:, None] * coin.matrix


def build_uk_batch(coin: CoinOperator, kx: np.ndarray, ky: np.ndarray) -> np.ndarray:
    """Stack of U_k for paired arrays of kx and ky, shape (B, 4, 4)."""
    return shift_phases(kx, ky)[:, :, None] * coin.matrix[None, :, :]


def delta_k(kx, ky):
    """Δ_k = cos²kx + 6 cos kx cos ky + cos²ky + 8."""
    cx, cy = np.cos(kx), np.cos(ky)
    return cx**2 + 6.0 * cx * cy + cy**2 + 8.0


def _closed_phases(kx, ky) -> np.ndarray:
    """Closed-form phases (ω₊, −ω₊, ω₋, −ω₋) on the last axis."""
    cx, cy = np.cos(kx), np.cos(ky)
    root = np.sqrt(delta_k(kx, ky))
    w_plus = np.arccos(np.clip((cx - cy + root) / 4.0, -1.0, 1.0))
    w_minus = np.arccos(np.clip((cx - cy - root) / 4.0, -1.0, 1.0))
    return np.stack([w_plus, -w_plus, w_minus, -w_minus], axis=-1)


def hadamard_closed_spectrum(k: WaveVector) -> HadamardSpectrumClosedForm:
    """
    Eigenphases of U_k for the H⊗H coin from cos ω± = (cos kx − cos ky ± √Δ_k)/4.

    Args:
        k: Wave vector

    Returns:
        HadamardSpectrumClosedForm
    """
    phases = _closed_phases(k.kx, k.ky)
    return HadamardSpectrumClosedForm(
        omega_plus=float(phases[0]),
        omega_minus=float(phases[2]),
        delta_k=float(delta_k(k.kx, k.ky)),
    )


def _closed_components(kx, ky, omega) -> np.ndarray:
    """Unnormalized eigenvector components, stacked on a new axis -2 (component, eigen)."""
    a = np.exp(1j * np.asarray(kx))[..., None]
    b = np.exp(1j * np.asarray(ky))[..., None]
    lam = np.exp(1j * np.asarray(omega))
    lam2, lam3 = lam**2, lam**3
    alpha1 = 1.0 - lam2
    alpha2 = -1.0 + lam * (a - b) + lam2 * a * b
    alpha3 = -1.0 + lam * (a - 1.0 / b) + lam2 * a / b
    alpha4 = 1.0 + lam * (b + 1.0 / b) + lam2 * (1.0 - a * b - a / b) - 2.0 * lam3 * a
    return np.stack(np.broadcast_arrays(alpha1, alpha2, alpha3, alpha4), axis=-2)


def hadamard_closed_eigenvectors(k: WaveVector, omega: float) -> np.ndarray:
    """
    Closed-form normalized eigenvector of U_k (H⊗H coin) for eigenphase ω.

    Args:
        k: Wave vector
        omega: Eigenphase of U_k at k

    Returns:
        Normalized complex 4-vector

    Raises:
        PreconditionError: If e^{iω} is not an eigenvalue of U_k
        DegeneratePointError: If the normalization constant vanishes
    """
    phases = _closed_phases(k.kx, k.ky)
    if np.min(angular_distance(phases, omega)) > 1e-9:
        raise PreconditionError(f"e^(i*{omega}) is not an eigenvalue of U_k at {k}")

    v = _closed_components(k.kx, k.ky, np.array([omega]))[:, 0]
    norm = float(np.linalg.norm(v))
    if norm < 1e-12:
        raise DegeneratePointError(
            f"Closed-form eigenvector degenerates at k=({k.kx}, {k.ky}), omega={omega}",
        )
    return v / norm


def _closed_batch(coin: CoinOperator, kx: np.ndarray, ky: np.ndarray):
    """Closed-form eigensystem with a mask of rows that need the generic solver."""
    phases = _closed_phases(kx, ky)
    vectors = _closed_components(kx, ky, phases)
    norms = np.linalg.norm(vectors, axis=1)
    bad = np.any(norms < config.CLOSED_FORM_MIN_NORM, axis=1)
    vectors = vectors / np.where(norms > 0, norms, 1.0)[:, None, :]

    uk = build_uk_batch(coin, kx, ky)
    residual = np.abs(uk @ vectors - vectors * np.exp(1j * phases)[:, None, :]).max(axis=(1, 2))
    bad |= residual > _RESIDUAL_TOL
    return phases, vectors, bad


def batch_spectra(
    coin: CoinOperator,
    kx: np.ndarray,
    ky: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Eigenphases and eigenvectors of U_k over paired arrays of wave-vector components.

    The H⊗H coin uses the closed form; rows where it degenerates fall back to
    the generic Jacobi solver.

    Args:
        coin: Two-qubit coin
        kx: Array of kx values, shape (B,)
        ky: Array of ky values, shape (B,)

    Returns:
        Tuple of (phases (B, 4), eigenvectors as columns (B, 4, 4))
    """
    kx = np.asarray(kx, dtype=np.float64)
    ky = np.asarray(ky, dtype=np.float64)
    if not coin.is_hadamard_product:
        return unitary_eigen_batch(build_uk_batch(coin, kx, ky))

    phases, vectors, bad = _closed_batch(coin, kx, ky)
    if bad.any():
        phases[bad], vectors[bad] = unitary_eigen_batch(build_uk_batch(coin, kx[bad], ky[bad]))
    return phases, vectors


def spectral_decomposition(
    coin: CoinOperator,
    k: WaveVector,
    degeneracy_tol: float | None = None,
) -> SpectralDecomposition:
    """
    Spectral decomposition of U_k, closed form for H⊗H at nondegenerate k.

    Args:
        coin: Two-qubit coin
        k: Wave vector
        degeneracy_tol: Angular merge tolerance (default: config.DEGENERACY_TOL)

    Returns:
        SpectralDecomposition of U_k
    """
    tol = config.DEGENERACY_TOL if degeneracy_tol is None else degeneracy_tol
    if coin.is_hadamard_product:
        kx, ky = np.array([k.kx]), np.array([k.ky])
        phases, vectors, bad = _closed_batch(coin, kx, ky)
        separated = all(
            angular_distance(phases[0, i], phases[0, j]) > tol
            for i in range(4)
            for j in range(i + 1, 4)
        )
        if not bad[0] and separated:
            return spectral_from_eigensystem(phases[0], vectors[0], tol)
    return unitary_eigen(build_uk(coin, k), tol)
