# SPDX-FileCopyrightText: 2025 Yannick Kees
# SPDX-FileCopyrightText: 2026 Yannick Kees
#
# SPDX-License-Identifier: MIT
"""Initial coin states, initial position distributions and their Fourier weights."""

import math
from dataclasses import dataclass

import numpy as np

from ..models.schemas import (
    GaussianIsotropic,
    PointMass,
    PositionDistribution,
    StateConfig,
    TwoSiteEntangled,
    TwoSiteSeparable,
    UniformLimit,
    WaveVector,
)
from ..numerics.linalg import binary_entropy, von_neumann_entropy
from ..utils.errors import PreconditionError, UnsupportedVariantError

NORM_TOL = 1e-12
_SLACK = 1e-12

BASIS_LABELS = ("LL", "LR", "RL", "RR")


@dataclass(frozen=True)
class CoinState:
    """Normalized two-qubit coin amplitudes in basis (LL, LR, RL, RR)."""

    amplitudes: np.ndarray
    label: str = "custom"

    def __post_init__(self):
        """Validate normalization and freeze the amplitudes."""
        c = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if c.shape != (4,) or not np.all(np.isfinite(c)):
            raise PreconditionError(f"Coin state needs 4 finite amplitudes, got {c.shape}")
        norm = float(np.sum(np.abs(c) ** 2))
        if abs(norm - 1.0) > NORM_TOL:
            raise PreconditionError(f"Coin state '{self.label}' has norm {norm:.15f}")
        c.flags.writeable = False
        object.__setattr__(self, "amplitudes", c)

    @property
    def projector(self) -> np.ndarray:
        """|χ⟩⟨χ|."""
        return np.outer(self.amplitudes, self.amplitudes.conj())


def _check_angles(theta: float, phi: float) -> None:
    if not -np.pi / 2 - _SLACK <= theta <= np.pi / 2 + _SLACK:
        raise PreconditionError(f"theta={theta} outside [-pi/2, pi/2]")
    if not -np.pi - _SLACK <= phi <= np.pi + _SLACK:
        raise PreconditionError(f"phi={phi} outside [-pi, pi]")


def one_qubit_state(theta: float, phi: float) -> np.ndarray:
    """cos θ |L⟩ + e^{iφ} sin θ |R⟩."""
    _check_angles(theta, phi)
    return np.array([np.cos(theta), np.exp(1j * phi) * np.sin(theta)], dtype=np.complex128)


def coin_family_I(theta: float, phi: float) -> CoinState:  # noqa: N802
    """|L⟩ ⊗ (cos θ |L⟩ + e^{iφ} sin θ |R⟩)."""
    _check_angles(theta, phi)
    c = [np.cos(theta), np.exp(1j * phi) * np.sin(theta), 0.0, 0.0]
    return CoinState(np.array(c), f"I({theta:.6g},{phi:.6g})")


def coin_family_II(theta: float, phi: float) -> CoinState:  # noqa: N802
    """cos θ |LR⟩ + e^{iφ} sin θ |RL⟩."""
    _check_angles(theta, phi)
    c = [0.0, np.cos(theta), np.exp(1j * phi) * np.sin(theta), 0.0]
    return CoinState(np.array(c), f"II({theta:.6g},{phi:.6g})")


def coin_family_III(theta: float, phi: float) -> CoinState:  # noqa: N802
    """cos θ |LL⟩ + e^{iφ} sin θ |RR⟩."""
    _check_angles(theta, phi)
    c = [np.cos(theta), 0.0, 0.0, np.exp(1j * phi) * np.sin(theta)]
    return CoinState(np.array(c), f"III({theta:.6g},{phi:.6g})")


def coin_separable(theta1: float, phi1: float, theta2: float, phi2: float) -> CoinState:
    """
    Product of two one-qubit states.

    Args:
        theta1: First-qubit mixing angle in [−π/2, π/2]
        phi1: First-qubit relative phase in [−π, π]
        theta2: Second-qubit mixing angle
        phi2: Second-qubit relative phase

    Returns:
        CoinState in (LL, LR, RL, RR) order
    """
    c = np.kron(one_qubit_state(theta1, phi1), one_qubit_state(theta2, phi2))
    return CoinState(c, f"sep({theta1:.6g},{phi1:.6g};{theta2:.6g},{phi2:.6g})")


def basis_state(name: str) -> CoinState:
    """Computational basis state by label (LL, LR, RL or RR)."""
    if name not in BASIS_LABELS:
        raise PreconditionError(f"Unknown basis state '{name}'")
    c = np.zeros(4, dtype=np.complex128)
    c[BASIS_LABELS.index(name)] = 1.0
    return CoinState(c, name)


def bell_psi_plus() -> CoinState:
    """(|LR⟩ + |RL⟩)/√2."""
    return CoinState(np.array([0.0, 1.0, 1.0, 0.0]) / np.sqrt(2.0), "bell-psi-plus")


def bell_psi_minus() -> CoinState:
    """(|LR⟩ − |RL⟩)/√2."""
    return CoinState(np.array([0.0, 1.0, -1.0, 0.0]) / np.sqrt(2.0), "bell-psi-minus")


def bell_phi_plus() -> CoinState:
    """(|LL⟩ + |RR⟩)/√2."""
    return CoinState(np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0), "bell-phi-plus")


def bell_phi_minus() -> CoinState:
    """(|LL⟩ − |RR⟩)/√2."""
    return CoinState(np.array([1.0, 0.0, 0.0, -1.0]) / np.sqrt(2.0), "bell-phi-minus")


def custom_state(amplitudes, label: str = "custom") -> CoinState:
    """
    Normalize arbitrary nonzero amplitudes into a CoinState.

    Args:
        amplitudes: Four complex amplitudes
        label: State label

    Returns:
        CoinState

    Raises:
        PreconditionError: If the vector is zero
    """
    c = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    norm = np.linalg.norm(c)
    if norm == 0:
        raise PreconditionError("Coin state amplitudes are all zero")
    return CoinState(c / norm, label)


def state_from_config(cfg: StateConfig) -> CoinState:
    """
    Build a CoinState from its configuration section (angles in units of π).

    Args:
        cfg: State configuration

    Returns:
        CoinState
    """
    pi = math.pi
    family = cfg.family
    if family == "I":
        return coin_family_I(cfg.theta * pi, cfg.phi * pi)
    if family == "II":
        return coin_family_II(cfg.theta * pi, cfg.phi * pi)
    if family == "III":
        return coin_family_III(cfg.theta * pi, cfg.phi * pi)
    if family == "separable":
        return coin_separable(cfg.theta1 * pi, cfg.phi1 * pi, cfg.theta2 * pi, cfg.phi2 * pi)
    if family == "custom":
        values = np.asarray(cfg.amplitudes, dtype=np.float64)
        return custom_state(values[0::2] + 1j * values[1::2])
    named = {
        "bell-psi-plus": bell_psi_plus,
        "bell-psi-minus": bell_psi_minus,
        "bell-phi-plus": bell_phi_plus,
        "bell-phi-minus": bell_phi_minus,
    }
    if family in named:
        return named[family]()
    return basis_state(family)


def gaussian_normalization(sigma: float) -> float:
    """Torus mean of exp(−(kx² + ky²)σ²) over [−π, π]²."""
    one_axis = math.sqrt(math.pi) * math.erf(math.pi * sigma) / (2.0 * math.pi * sigma)
    return one_axis**2


def fourier_weight_grid(pos: PositionDistribution, kx, ky) -> np.ndarray:
    """
    Fourier weight |ã(k)|² on arrays of wave-vector components.

    Args:
        pos: Position distribution (not UniformLimit)
        kx: Array of kx values
        ky: Array of ky values, broadcastable against kx

    Returns:
        Non-negative array of weights

    Raises:
        UnsupportedVariantError: For UniformLimit, which has no pointwise weight
    """
    kx = np.asarray(kx, dtype=np.float64)
    ky = np.asarray(ky, dtype=np.float64)
    shape = np.broadcast(kx, ky).shape

    if isinstance(pos, PointMass):
        return np.ones(shape)
    if isinstance(pos, TwoSiteSeparable):
        w = 1.0 + np.sin(2 * pos.alpha) * np.cos(2 * kx + pos.beta)
        return np.clip(np.broadcast_to(w, shape), 0.0, None)
    if isinstance(pos, TwoSiteEntangled):
        w = 1.0 + np.sin(2 * pos.alpha) * np.cos(2 * (kx - ky) + pos.beta)
        return np.clip(w, 0.0, None)
    if isinstance(pos, GaussianIsotropic):
        w = np.exp(-(kx**2 + ky**2) * pos.sigma**2)
        return w / gaussian_normalization(pos.sigma)
    if isinstance(pos, UniformLimit):
        raise UnsupportedVariantError(
            "UniformLimit has no pointwise Fourier weight; use the uniform-limit density",
        )
    raise UnsupportedVariantError(f"Unknown position variant {type(pos).__name__}")


def fourier_weight(pos: PositionDistribution, k: WaveVector) -> float:
    """Fourier weight |ã(k)|² at a single wave vector."""
    return float(fourier_weight_grid(pos, k.kx, k.ky))


def support(pos: PositionDistribution) -> list[tuple[tuple[int, int], complex]]:
    """
    Nonzero-capable amplitudes a(r) of a finite-support position distribution.

    Args:
        pos: PointMass, TwoSiteSeparable or TwoSiteEntangled

    Returns:
        List of ((x, y), amplitude)

    Raises:
        UnsupportedVariantError: For Gaussian and uniform distributions
    """
    if isinstance(pos, PointMass):
        return [((pos.x0, pos.y0), 1.0 + 0j)]
    if isinstance(pos, TwoSiteSeparable):
        return [
            ((-1, 0), complex(np.cos(pos.alpha))),
            ((1, 0), complex(np.exp(1j * pos.beta) * np.sin(pos.alpha))),
        ]
    if isinstance(pos, TwoSiteEntangled):
        return [
            ((-1, 1), complex(np.cos(pos.alpha))),
            ((1, -1), complex(np.exp(1j * pos.beta) * np.sin(pos.alpha))),
        ]
    raise UnsupportedVariantError(
        f"Position variant '{pos.kind}' has no finite support; only point and two-site "
        "distributions can be placed on the lattice",
    )


def coin_coin_entropy(chi: CoinState) -> float:
    """
    Entanglement between the two coin qubits (bits).

    Args:
        chi: Two-qubit coin state

    Returns:
        Von Neumann entropy of either one-qubit reduced state, in [0, 1]
    """
    psi = chi.amplitudes.reshape(2, 2)
    rho_first = psi @ psi.conj().T
    return von_neumann_entropy(rho_first)


def position_position_entropy(pos: PositionDistribution) -> float:
    """
    Entanglement between the x and y coordinates of an entangled two-site position.

    Args:
        pos: TwoSiteEntangled distribution

    Returns:
        Binary entropy of cos²α

    Raises:
        UnsupportedVariantError: For any other variant
    """
    if not isinstance(pos, TwoSiteEntangled):
        raise UnsupportedVariantError(
            f"Position-position entropy needs a two-site entangled state, got '{pos.kind}'",
        )
    return binary_entropy(float(np.cos(pos.alpha) ** 2))
