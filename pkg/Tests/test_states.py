# SPDX-FileCopyrightText: 2025 Yannick Kees
# SPDX-FileCopyrightText: 2026 Yannick Kees
#
# SPDX-License-Identifier: MIT
"""Tests for coin states, position distributions and Fourier weights."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.models.schemas import (
    GaussianIsotropic,
    PointMass,
    StateConfig,
    TwoSiteEntangled,
    TwoSiteSeparable,
    UniformLimit,
    WaveVector,
)
from src.utils.errors import PreconditionError, UnsupportedVariantError
from src.walk.coin import random_unitary
from src.walk.kspace import kgrid
from src.walk.states import (
    CoinState,
    basis_state,
    bell_phi_minus,
    bell_phi_plus,
    bell_psi_minus,
    bell_psi_plus,
    coin_coin_entropy,
    coin_family_I,
    coin_family_II,
    coin_family_III,
    coin_separable,
    custom_state,
    fourier_weight,
    fourier_weight_grid,
    position_position_entropy,
    state_from_config,
    support,
)

S = 1 / math.sqrt(2)


def test_family_I_at_zero_is_ll():
    """θ = 0 gives |LL⟩."""
    np.testing.assert_allclose(coin_family_I(0.0, 1.3).amplitudes, [1, 0, 0, 0], atol=1e-15)


def test_family_II_at_quarter_pi_is_psi_plus():
    """θ = π/4, φ = 0 gives Ψ⁺."""
    np.testing.assert_allclose(
        coin_family_II(math.pi / 4, 0.0).amplitudes, [0, S, S, 0], atol=1e-15,
    )


def test_family_II_at_quarter_pi_phase_pi_is_psi_minus():
    """θ = π/4, φ = π gives Ψ⁻."""
    np.testing.assert_allclose(
        coin_family_II(math.pi / 4, math.pi).amplitudes, [0, S, -S, 0], atol=1e-15,
    )


def test_family_III_at_quarter_pi():
    """θ = π/4, φ = 0 gives Φ⁺."""
    np.testing.assert_allclose(
        coin_family_III(math.pi / 4, 0.0).amplitudes, bell_phi_plus().amplitudes, atol=1e-15,
    )


@pytest.mark.parametrize("theta,phi", [(2.0, 0.0), (0.0, 3.5), (-1.6, 0.0)])
def test_family_angle_domain(theta, phi):
    """Angles outside θ ∈ [−π/2, π/2], φ ∈ [−π, π] raise."""
    with pytest.raises(PreconditionError):
        coin_family_II(theta, phi)


def test_separable_is_kronecker_product():
    """Separable states are products of one-qubit states."""
    chi = coin_separable(0.3, 0.5, -0.7, 2.0)
    a = np.array([math.cos(0.3), np.exp(0.5j) * math.sin(0.3)])
    b = np.array([math.cos(-0.7), np.exp(2.0j) * math.sin(-0.7)])
    np.testing.assert_allclose(chi.amplitudes, np.kron(a, b), atol=1e-15)


def test_family_I_is_separable_with_first_qubit_left():
    """Family I equals the separable state with θ₁ = 0."""
    np.testing.assert_allclose(
        coin_family_I(0.4, -1.0).amplitudes,
        coin_separable(0.0, 0.0, 0.4, -1.0).amplitudes,
        atol=1e-15,
    )


def test_coin_state_requires_normalization():
    """Unnormalized amplitudes raise."""
    with pytest.raises(PreconditionError):
        CoinState(np.array([1.0, 1.0, 0.0, 0.0]))


def test_custom_state_normalizes():
    """custom_state rescales to unit norm."""
    chi = custom_state([1.0, 1j, 0.0, 0.0])
    assert np.linalg.norm(chi.amplitudes) == pytest.approx(1.0)


def test_custom_state_rejects_zero():
    """The zero vector raises."""
    with pytest.raises(PreconditionError):
        custom_state([0.0, 0.0, 0.0, 0.0])


def test_basis_state_unknown():
    """Only LL, LR, RL and RR are basis states."""
    with pytest.raises(PreconditionError):
        basis_state("UP")


@pytest.mark.parametrize(
    "chi,expected",
    [
        (basis_state("LL"), 0.0),
        (coin_separable(0.3, 0.1, 1.0, -2.0), 0.0),
        (bell_psi_plus(), 1.0),
        (bell_psi_minus(), 1.0),
        (bell_phi_plus(), 1.0),
        (bell_phi_minus(), 1.0),
    ],
)
def test_coin_coin_entropy(chi, expected):
    """Products have no coin-coin entanglement; Bell states have one bit."""
    assert coin_coin_entropy(chi) == pytest.approx(expected, abs=1e-12)


def test_coin_coin_entropy_family_II():
    """Family II has binary entropy of cos²θ."""
    theta = 0.4
    p = math.cos(theta) ** 2
    expected = -p * math.log2(p) - (1 - p) * math.log2(1 - p)
    assert coin_coin_entropy(coin_family_II(theta, 0.9)) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("alpha,expected", [(0.0, 0.0), (math.pi / 4, 1.0), (-math.pi / 4, 1.0)])
def test_position_position_entropy(alpha, expected):
    """Entangled two-site positions carry h(cos²α)."""
    pos = TwoSiteEntangled(alpha=alpha, beta=0.2)
    assert position_position_entropy(pos) == pytest.approx(expected, abs=1e-12)


def test_position_position_entropy_rejects_other_variants():
    """Only the entangled two-site variant has position-position entanglement."""
    with pytest.raises(UnsupportedVariantError):
        position_position_entropy(TwoSiteSeparable(alpha=0.3))


@pytest.mark.parametrize(
    "pos,k,expected",
    [
        (PointMass(x0=5, y0=-3), (1.0, 2.0), 1.0),
        (TwoSiteSeparable(alpha=math.pi / 4, beta=0.0), (0.0, 0.7), 2.0),
        (TwoSiteSeparable(alpha=math.pi / 4, beta=0.0), (math.pi / 2, 0.7), 0.0),
        (TwoSiteSeparable(alpha=0.0, beta=1.0), (0.3, 0.3), 1.0),
        (TwoSiteEntangled(alpha=math.pi / 4, beta=0.0), (0.5, 0.5), 2.0),
        (TwoSiteEntangled(alpha=-math.pi / 4, beta=0.0), (0.0, 0.0), 0.0),
    ],
)
def test_fourier_weight_examples(pos, k, expected):
    """Pointwise weights at reference wave vectors."""
    assert fourier_weight(pos, WaveVector(kx=k[0], ky=k[1])) == pytest.approx(expected, abs=1e-12)


def test_fourier_weight_matches_support_transform(rng):
    """The weight equals |Σ e^{ik·r} a(r)|² for the listed support."""
    for pos in (TwoSiteSeparable(alpha=0.3, beta=1.1), TwoSiteEntangled(alpha=-0.8, beta=-2.0)):
        for _ in range(10):
            kx, ky = rng.uniform(-math.pi, math.pi, 2)
            amp = sum(a * np.exp(1j * (kx * x + ky * y)) for (x, y), a in support(pos))
            weight = fourier_weight(pos, WaveVector(kx=kx, ky=ky))
            assert weight == pytest.approx(abs(amp) ** 2, abs=1e-12)


def test_fourier_weight_uniform_raises():
    """The uniform limit has no pointwise weight."""
    with pytest.raises(UnsupportedVariantError):
        fourier_weight(UniformLimit(), WaveVector(kx=0.0, ky=0.0))


@settings(max_examples=100, deadline=None)
@given(
    alpha=st.floats(min_value=-math.pi / 2, max_value=math.pi / 2),
    beta=st.floats(min_value=-math.pi, max_value=math.pi),
    entangled=st.booleans(),
)
def test_fourier_weight_grid_mean_is_one(alpha, beta, entangled):
    """The weight averages to one on the midpoint grid."""
    axis = kgrid(64, 0.5)
    kx, ky = np.meshgrid(axis, axis, indexing="ij")
    kind = TwoSiteEntangled if entangled else TwoSiteSeparable
    w = fourier_weight_grid(kind(alpha=alpha, beta=beta), kx, ky)
    assert float(w.mean()) == pytest.approx(1.0, abs=1e-10)
    assert np.all(w >= 0.0)


@pytest.mark.parametrize("sigma", [2.0, 3.5, 6.0])
def test_gaussian_weight_grid_mean_is_one(sigma):
    """The Gaussian weight is normalized to unit torus mean."""
    axis = kgrid(256, 0.5)
    kx, ky = np.meshgrid(axis, axis, indexing="ij")
    w = fourier_weight_grid(GaussianIsotropic(sigma=sigma), kx, ky)
    assert float(w.mean()) == pytest.approx(1.0, abs=1e-10)


def test_support_rejects_gaussian():
    """Gaussian positions have no finite support."""
    with pytest.raises(UnsupportedVariantError):
        support(GaussianIsotropic(sigma=1.0))


def test_support_two_site_norm():
    """Two-site amplitudes are normalized."""
    sites = support(TwoSiteEntangled(alpha=0.6, beta=0.4))
    assert [r for r, _ in sites] == [(-1, 1), (1, -1)]
    assert sum(abs(a) ** 2 for _, a in sites) == pytest.approx(1.0)


@pytest.mark.parametrize(
    "cfg,expected",
    [
        (StateConfig(family="LR"), [0, 1, 0, 0]),
        (StateConfig(family="bell-psi-minus"), [0, S, -S, 0]),
        (StateConfig(family="II", theta=0.25, phi=0.0), [0, S, S, 0]),
        (StateConfig(family="custom", amplitudes=[0, 0, 0, 0, 0, 0, 2, 0]), [0, 0, 0, 1]),
    ],
)
def test_state_from_config(cfg, expected):
    """Config sections in units of π map to coin states."""
    np.testing.assert_allclose(state_from_config(cfg).amplitudes, expected, atol=1e-15)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_coin_coin_entropy_local_unitary_invariance(seed):
    """Local one-qubit unitaries leave the coin-coin entanglement unchanged."""
    rng = np.random.default_rng(seed)
    chi = custom_state(rng.normal(size=4) + 1j * rng.normal(size=4))
    local = np.kron(random_unitary(2, rng).matrix, random_unitary(2, rng).matrix)
    rotated = custom_state(local @ chi.amplitudes)
    assert coin_coin_entropy(rotated) == pytest.approx(coin_coin_entropy(chi), abs=1e-8)
