# SPDX-FileCopyrightText: 2025 Yannick Kees
# SPDX-FileCopyrightText: 2026 Yannick Kees
#
# SPDX-License-Identifier: MIT
"""Closed-form reference densities for the H⊗H walk."""

import numpy as np

SQRT2 = np.sqrt(2.0)

C1 = (9.0 - 4.0 * SQRT2) / 8.0
C2 = (5.0 - 3.0 * SQRT2) / 8.0
C3 = (3.0 - 2.0 * SQRT2) / 8.0
C4 = (2.0 * SQRT2 - 1.0) / 8.0
C5 = (SQRT2 - 1.0) / 8.0

# Spectrum of the localized |LL⟩ density, ascending.
LOCAL_LL_EIGENVALUES = np.sort(np.array([0.5, 4 * C3, 4 * C5, 4 * C5]))


def h_function(theta: float, phi: float) -> float:
    """h = sin 2θ cos φ."""
    return float(np.sin(2 * theta) * np.cos(phi))


def f_function(theta: float, phi: float) -> float:
    """f = h + cos 2θ + 1."""
    return h_function(theta, phi) + float(np.cos(2 * theta)) + 1.0


def g_function(theta: float, phi: float) -> complex:
    """g = f − i√2 sin φ sin 2θ − 1."""
    return f_function(theta, phi) - 1j * SQRT2 * np.sin(phi) * np.sin(2 * theta) - 1.0


def local_ll_density() -> np.ndarray:
    """Asymptotic density for |LL⟩ at the origin."""
    return np.array(
        [
            [C1, C2, C2, C3],
            [C2, C4, C3, C5],
            [C2, C3, C4, C5],
            [C3, C5, C5, 0.125],
        ],
        dtype=np.complex128,
    )


def family_I_density(theta: float, phi: float) -> np.ndarray:  # noqa: N802
    """
    Asymptotic density for |L⟩ ⊗ (cos θ |L⟩ + e^{iφ} sin θ |R⟩) at the origin.

    Args:
        theta: Mixing angle in radians
        phi: Relative phase in radians

    Returns:
        4x4 complex matrix
    """
    f = f_function(theta, phi)
    g = g_function(theta, phi)
    gc = np.conj(g)
    return np.array(
        [
            [C4 + C2 * f, C2 * g, C5 + C3 * f, C3 * g],
            [C2 * gc, C1 - C2 * f, C3 * gc, C2 - C3 * f],
            [C5 + C3 * f, C3 * g, 0.125 + C5 * f, C5 * g],
            [C3 * gc, C2 - C3 * f, C5 * gc, C4 - C5 * f],
        ],
        dtype=np.complex128,
    )


def family_II_entries(theta: float, phi: float) -> dict[tuple[int, int], complex]:  # noqa: N802
    """
    Tabulated entries (0-based indices) of the localized family-II density.

    The (1, 2) entry (0-based) is omitted: its tabulated form lacks a prefactor.

    Args:
        theta: Mixing angle in radians
        phi: Relative phase in radians

    Returns:
        Mapping (row, col) → value
    """
    h = h_function(theta, phi)
    f = f_function(theta, phi)
    g = g_function(theta, phi)
    e01 = C3 * (np.conj(g) + 1) - C2 * (f - h) + C5
    e02 = C3 * (g + 1) + C5 * (f - h) - C2
    return {
        (0, 0): C4 + C3 * h,
        (3, 3): C4 + C3 * h,
        (1, 1): C3 * (f - 2 * h) + (f - h + 1) / 8,
        (2, 2): -C3 * f + (h - f) / 8 + C1,
        (0, 1): e01,
        (1, 3): -np.conj(e01),
        (0, 2): e02,
        (2, 3): -np.conj(e02),
        (0, 3): -C3 * (h + 1),
    }


def uniform_family_II_density(theta: float, phi: float) -> np.ndarray:  # noqa: N802
    """
    Density for cos θ |LR⟩ + e^{iφ} sin θ |RL⟩ with a uniformly extended position.

    Args:
        theta: Mixing angle in radians
        phi: Relative phase in radians

    Returns:
        Real symmetric 4x4 matrix as complex array
    """
    h = h_function(theta, phi)
    c2 = float(np.cos(theta) ** 2)
    d = np.diag([3 + h, 1 - h + 8 * c2, 9 - h - 8 * c2, 3 + h])
    off = {
        (0, 1): 1 - 4 * c2 + h,
        (0, 2): -3 + h + 4 * c2,
        (0, 3): -1 + h,
        (1, 2): -1 + h,
        (1, 3): -1 - h + 4 * c2,
        (2, 3): 3 - h - 4 * c2,
    }
    m = d.astype(np.float64)
    for (i, j), value in off.items():
        m[i, j] = m[j, i] = value
    return (m / 16.0).astype(np.complex128)
