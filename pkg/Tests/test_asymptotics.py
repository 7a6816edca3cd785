# SPDX-FileCopyrightText: 2025 Yannick Kees
# SPDX-FileCopyrightText: 2026 Yannick Kees
#
# SPDX-License-Identifier: MIT
"""Tests for the asymptotic reduced density and entanglement."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.asymptotics.closed_forms import (
    LOCAL_LL_EIGENVALUES,
    family_I_density,
    family_II_entries,
    local_ll_density,
    uniform_family_II_density,
)
from src.asymptotics.engine import (
    AsymptoticEngine,
    ReducedDensity,
    asymptotic_entanglement,
    asymptotic_reduced_density,
    coin_constant_gaps,
    compute_channel,
    constant_phase_gaps,
    pointwise_p_matrix,
    uniform_limit_reduced_density,
)
from src.models.schemas import (
    GaussianIsotropic,
    PointMass,
    QuadratureSpec,
    TwoSiteEntangled,
    TwoSiteSeparable,
    UniformLimit,
    WaveVector,
)
from src.numerics.linalg import unitary_eigen
from src.simulator.lattice import entanglement_trajectory, evolve, reduced_density_matrix
from src.utils.config import config
from src.utils.errors import (
    DensityMatrixError,
    NotHermitianError,
    OscillatingLimitError,
    PreconditionError,
    QuadratureNotConvergedError,
    UnsupportedVariantError,
)
from src.walk.coin import grover4, hadamard2, identity, random_unitary, tensor
from src.walk.kspace import spectral_decomposition
from src.walk.states import (
    basis_state,
    bell_psi_minus,
    bell_psi_plus,
    coin_family_I,
    coin_family_II,
    coin_family_III,
    custom_state,
)

THETAS = np.linspace(-math.pi / 2, math.pi / 2, 5)
PHIS = np.linspace(-math.pi, math.pi, 5)


def test_p_matrix_identity_spectrum():
    """A single eigenspace leaves |χ⟩⟨χ| unchanged."""
    chi = bell_psi_plus()
    spec = unitary_eigen(np.eye(4))
    np.testing.assert_allclose(pointwise_p_matrix(spec, chi), chi.projector, atol=1e-14)


def test_p_matrix_of_eigenvector(hh):
    """An exact eigenvector of U_k is a fixed point."""
    k = WaveVector(kx=0.8, ky=-0.4)
    spec = spectral_decomposition(hh, k)
    w, v = np.linalg.eigh(spec.projectors[0])
    chi = custom_state(v[:, -1])
    p = pointwise_p_matrix(spec, chi)
    np.testing.assert_allclose(p, chi.projector, atol=1e-12)


def test_localized_ll_matches_closed_form(hh, origin, quad):
    """|LL⟩ at the origin reproduces the C₁…C₅ matrix."""
    density = asymptotic_reduced_density(hh, basis_state("LL"), origin, quad)
    np.testing.assert_allclose(density.matrix, local_ll_density(), atol=1e-6)
    np.testing.assert_allclose(np.sort(density.eigenvalues), LOCAL_LL_EIGENVALUES, atol=1e-6)


@pytest.mark.parametrize(
    "chi,expected,tol",
    [
        (basis_state("LL"), 1.744, 1e-3),
        (bell_psi_plus(), 1.978, 2e-3),
        (bell_psi_minus(), 1.888, 2e-3),
    ],
)
def test_localized_entanglement(hh, origin, quad, chi, expected, tol):
    """Reference entanglement values for localized walkers."""
    report = asymptotic_entanglement(hh, chi, origin, quad)
    assert report.entropy == pytest.approx(expected, abs=tol)
    assert report.converged
    assert len(report.refinement_history) >= 2
    assert len(report.eigenvalues) == 4


def test_entropy_consistent_with_eigenvalues(hh, origin, quad):
    """Report entropy equals the Shannon entropy of its eigenvalues."""
    report = asymptotic_entanglement(hh, bell_psi_minus(), origin, quad)
    lam = report.eigenvalues[report.eigenvalues > 1e-12]
    assert report.entropy == pytest.approx(float(-np.sum(lam * np.log2(lam))), abs=1e-10)


def test_translation_invariance(hh, quad):
    """A point mass anywhere gives the same density."""
    chi = bell_psi_plus()
    a = asymptotic_reduced_density(hh, chi, PointMass(), quad)
    b = asymptotic_reduced_density(hh, chi, PointMass(x0=7, y0=-4), quad)
    np.testing.assert_allclose(a.matrix, b.matrix, atol=1e-12)


@pytest.mark.parametrize("kind", [TwoSiteSeparable, TwoSiteEntangled])
def test_two_site_at_zero_alpha_is_local(hh, origin, quad, kind):
    """α = 0 reduces the two-site weight to one."""
    chi = bell_psi_plus()
    local = asymptotic_reduced_density(hh, chi, origin, quad)
    nonlocal_ = asymptotic_reduced_density(hh, chi, kind(alpha=0.0, beta=0.0), quad)
    np.testing.assert_allclose(nonlocal_.matrix, local.matrix, atol=1e-10)


@pytest.mark.parametrize("alpha,beta", [(math.pi / 8, -3 * math.pi / 4), (-0.6, 0.2), (1.1, -2.9)])
def test_two_site_phase_symmetry(hh, quad, alpha, beta):
    """E(α, β + π) = E(−α, β) for the separable two-site position."""
    chi = basis_state("LL")
    a = asymptotic_entanglement(hh, chi, TwoSiteSeparable(alpha=alpha, beta=beta + math.pi), quad)
    b = asymptotic_entanglement(hh, chi, TwoSiteSeparable(alpha=-alpha, beta=beta), quad)
    assert a.entropy == pytest.approx(b.entropy, abs=1e-8)


@pytest.mark.parametrize("kind", [TwoSiteSeparable, TwoSiteEntangled])
@pytest.mark.parametrize("chi", [bell_psi_plus(), bell_psi_minus(), basis_state("LL")])
def test_nonlocal_entanglement_range(hh, quad, kind, chi):
    """Non-local initial positions keep E within [1, 2]."""
    report = asymptotic_entanglement(hh, chi, kind(alpha=math.pi / 5, beta=0.4), quad)
    assert 1.0 - 1e-9 <= report.entropy <= 2.0 + 1e-9


@pytest.mark.parametrize("theta", THETAS)
@pytest.mark.parametrize("phi", PHIS)
def test_family_I_closed_form(hh, origin, quad, theta, phi):
    """Family I density equals the closed-form matrix in h, f, g."""
    density = asymptotic_reduced_density(hh, coin_family_I(theta, phi), origin, quad)
    np.testing.assert_allclose(density.matrix, family_I_density(theta, phi), atol=1e-6)


@pytest.mark.parametrize("theta", [-math.pi / 2, 0.0, math.pi / 2])
@pytest.mark.parametrize("phi", PHIS)
def test_family_II_tabulated_entries(hh, origin, quad, theta, phi):
    """Family II agrees with the tabulated entries at product points."""
    density = asymptotic_reduced_density(hh, coin_family_II(theta, phi), origin, quad)
    for (i, j), value in family_II_entries(theta, phi).items():
        assert density.matrix[i, j] == pytest.approx(value, abs=1e-6)


@pytest.mark.parametrize("theta", THETAS)
@pytest.mark.parametrize("phi", PHIS)
def test_mirror_symmetry(hh, origin, quad, theta, phi):
    """E for family III at (θ, φ) equals family II at (−θ, φ)."""
    engine = AsymptoticEngine(hh, origin, quad)
    e3 = engine.evaluate(coin_family_III(theta, phi)).entropy
    e2 = engine.evaluate(coin_family_II(-theta, phi)).entropy
    assert e3 == pytest.approx(e2, abs=1e-8)


def test_family_II_range(hh, origin, quad):
    """Family II entropies stay in [1.744, 1.978] up to tolerance."""
    engine = AsymptoticEngine(hh, origin, quad)
    for theta in np.linspace(-math.pi / 2, math.pi / 2, 9):
        for phi in np.linspace(-math.pi, math.pi, 9):
            e = engine.evaluate(coin_family_II(theta, phi)).entropy
            assert 1.744 - 2e-3 <= e <= 1.978 + 2e-3


def test_uniform_psi_plus_is_maximally_mixed(hh):
    """Ψ⁺ with a uniform position gives I/4 and E = 2."""
    density = uniform_limit_reduced_density(hh, bell_psi_plus())
    np.testing.assert_allclose(density.matrix, np.eye(4) / 4, atol=1e-12)
    assert density.entropy() == pytest.approx(2.0, abs=1e-9)


def test_uniform_psi_minus(hh):
    """Ψ⁻ with a uniform position gives exactly one bit."""
    density = uniform_limit_reduced_density(hh, bell_psi_minus())
    assert density.entropy() == pytest.approx(1.0, abs=1e-9)


def test_uniform_lr(hh):
    """|LR⟩ with a uniform position gives E ≈ 1.20."""
    density = uniform_limit_reduced_density(hh, basis_state("LR"))
    assert density.entropy() == pytest.approx(1.20, abs=0.01)


@pytest.mark.parametrize("theta", np.linspace(-math.pi / 2, math.pi / 2, 9))
@pytest.mark.parametrize("phi", np.linspace(-math.pi, math.pi, 9))
def test_uniform_family_II_table(hh, theta, phi):
    """Uniform-limit family II densities match the closed-form table."""
    density = uniform_limit_reduced_density(hh, coin_family_II(theta, phi))
    np.testing.assert_allclose(density.matrix, uniform_family_II_density(theta, phi), atol=1e-12)
    h = math.sin(2 * theta) * math.cos(phi)
    assert density.matrix[0, 0].real == pytest.approx((h + 3) / 16, abs=1e-12)


def test_uniform_routes_through_asymptotic_entanglement(hh):
    """UniformLimit skips quadrature and reports convergence."""
    report = asymptotic_entanglement(hh, bell_psi_plus(), UniformLimit())
    assert report.entropy == pytest.approx(2.0, abs=1e-9)
    assert report.converged
    assert report.refinement_history == []


def test_uniform_rejected_by_quadrature_path(hh):
    """The quadrature density refuses the uniform limit."""
    with pytest.raises(UnsupportedVariantError):
        asymptotic_reduced_density(hh, bell_psi_plus(), UniformLimit())


def test_gaussian_approaches_uniform_limit(hh):
    """A wide Gaussian position approaches the uniform-limit entanglement."""
    quad = QuadratureSpec(grid_points_per_axis=512, max_refinements=0)
    report = asymptotic_entanglement(hh, bell_psi_plus(), GaussianIsotropic(sigma=20.0), quad)
    assert report.entropy == pytest.approx(2.0, abs=0.02)


def test_non_convergence_raises_with_history(hh, origin):
    """An unreachable tolerance raises and carries the refinement history."""
    quad = QuadratureSpec(grid_points_per_axis=16, refine_tol=1e-300, max_refinements=1)
    with pytest.raises(QuadratureNotConvergedError) as excinfo:
        asymptotic_entanglement(hh, basis_state("LL"), origin, quad)
    assert [m for m, _ in excinfo.value.history] == [16, 32]
    assert excinfo.value.exit_code == 3


def test_no_refinement_counts_as_converged(hh, origin):
    """max_refinements = 0 evaluates a single grid."""
    quad = QuadratureSpec(grid_points_per_axis=32, max_refinements=0)
    report = AsymptoticEngine(hh, origin, quad).run(basis_state("LL"))
    assert report.converged
    assert [m for m, _ in report.refinement_history] == [32]


def test_engine_evaluate_never_raises(hh, origin):
    """evaluate flags non-convergence instead of raising."""
    quad = QuadratureSpec(grid_points_per_axis=16, refine_tol=1e-300, max_refinements=1)
    report = AsymptoticEngine(hh, origin, quad).evaluate(basis_state("LL"))
    assert not report.converged


def test_engine_rejects_two_by_two_coin(origin):
    """The 2D engine needs a 4x4 coin."""
    with pytest.raises(PreconditionError):
        AsymptoticEngine(identity(2), origin)


def test_channel_independent_of_chunking(hh, monkeypatch):
    """Chunked and threaded accumulation gives bitwise-identical channels."""
    pos = TwoSiteEntangled(alpha=0.3, beta=0.2)
    single = compute_channel(hh, pos, 32, 0.5)
    monkeypatch.setattr(config, "CHUNK_SIZE", 100)
    serial = compute_channel(hh, pos, 32, 0.5, workers=1)
    threaded = compute_channel(hh, pos, 32, 0.5, workers=3)
    np.testing.assert_array_equal(serial.tensor, threaded.tensor)
    np.testing.assert_allclose(serial.tensor, single.tensor, atol=1e-13)


@pytest.mark.parametrize(
    "coin_factory",
    [lambda: random_unitary(4, np.random.default_rng(seed)) for seed in (5, 99)],
)
def test_other_coins_give_valid_densities(coin_factory, origin):
    """Densities for non-Hadamard coins satisfy the density invariants."""
    quad = QuadratureSpec(grid_points_per_axis=32, max_refinements=0)
    report = asymptotic_entanglement(coin_factory(), bell_psi_plus(), origin, quad)
    assert 0.0 <= report.entropy <= 2.0
    assert np.trace(report.density.matrix).real == pytest.approx(1.0, abs=1e-10)


def test_constant_phase_gaps_finds_flat_pair():
    """Two flat bands at 0 and π give a constant gap of π; dispersive bands give none."""
    k = np.linspace(-3.0, 3.0, 200)
    flat = np.stack([np.zeros_like(k), np.full_like(k, math.pi), 0.4 * k, -0.4 * k], axis=1)
    dispersive = np.stack([k, -k, 0.5 * k + 1.0, -0.5 * k - 1.0], axis=1)
    assert constant_phase_gaps(flat) == pytest.approx((math.pi,))
    assert constant_phase_gaps(dispersive) == ()


def test_grover_has_constant_gap_of_pi():
    """grover4 carries flat eigenphases 0 and π at every wave vector."""
    gaps = coin_constant_gaps(grover4())
    assert any(abs(g - math.pi) < 1e-6 for g in gaps)


@pytest.mark.parametrize(
    "coin_factory",
    [
        lambda: tensor(hadamard2(), hadamard2()),
        lambda: identity(4),
        lambda: random_unitary(4, np.random.default_rng(3)),
    ],
)
def test_dispersive_coins_have_no_constant_gaps(coin_factory):
    """Coins whose bands all disperse have a single long-time limit."""
    assert coin_constant_gaps(coin_factory()) == ()


def test_grover_evaluate_flags_oscillation(origin):
    """evaluate returns the time-averaged density marked as not converged."""
    quad = QuadratureSpec(grid_points_per_axis=32, max_refinements=0)
    report = AsymptoticEngine(grover4(), origin, quad).evaluate(basis_state("LL"))
    assert not report.converged
    assert any(abs(g - math.pi) < 1e-6 for g in report.oscillation_gaps)
    assert np.trace(report.density.matrix).real == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("pos", [PointMass(), UniformLimit()])
def test_grover_limit_raises(pos):
    """No single long-time entanglement exists for grover4."""
    quad = QuadratureSpec(grid_points_per_axis=16, max_refinements=0)
    with pytest.raises(OscillatingLimitError) as excinfo:
        asymptotic_entanglement(grover4(), basis_state("LL"), pos, quad)
    assert excinfo.value.exit_code == 3
    with pytest.raises(OscillatingLimitError):
        AsymptoticEngine(grover4(), pos, quad).run(basis_state("LL"))


def test_grover_reduced_density_raises(origin):
    """The density entry point refuses an oscillating limit as well."""
    quad = QuadratureSpec(grid_points_per_axis=16, max_refinements=0)
    with pytest.raises(OscillatingLimitError):
        asymptotic_reduced_density(grover4(), basis_state("LL"), origin, quad)


@pytest.mark.slow
def test_grover_density_alternates_between_even_and_odd_steps(origin):
    """The lattice density keeps a period-two swing around the time-averaged one."""
    chi = basis_state("LL")
    coin = grover4()
    quad = QuadratureSpec(grid_points_per_axis=256, max_refinements=0)
    report = AsymptoticEngine(coin, origin, quad).evaluate(chi)

    rho_even = reduced_density_matrix(evolve(chi, origin, coin, 200))
    rho_odd = reduced_density_matrix(evolve(chi, origin, coin, 201))
    np.testing.assert_allclose(0.5 * (rho_even + rho_odd), report.density.matrix, atol=5e-3)
    assert np.max(np.abs(rho_even - report.density.matrix)) > 0.05

    trajectory = dict(entanglement_trajectory(chi, origin, coin, 201))
    assert abs(trajectory[200] - report.entropy) > 0.05
    assert abs(trajectory[201] - report.entropy) > 0.05


def test_identity_coin_keeps_basis_state_pure(origin):
    """Without coin mixing a basis state stays a product state."""
    quad = QuadratureSpec(grid_points_per_axis=16, max_refinements=0)
    report = asymptotic_entanglement(identity(4), basis_state("RL"), origin, quad)
    assert report.entropy == pytest.approx(0.0, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_random_states_give_valid_densities(seed):
    """Random coin states map to Hermitian, unit-trace, PSD densities."""
    rng = np.random.default_rng(seed)
    chi = custom_state(rng.normal(size=4) + 1j * rng.normal(size=4))
    hh = tensor(hadamard2(), hadamard2())
    channel = AsymptoticEngine(hh, PointMass(), QuadratureSpec(grid_points_per_axis=32)).channel(32)
    density = ReducedDensity(channel.apply(chi))
    np.testing.assert_allclose(density.matrix, density.matrix.conj().T, atol=1e-10)
    assert np.trace(density.matrix).real == pytest.approx(1.0, abs=1e-8)
    assert density.eigenvalues.min() >= 0.0


def test_reduced_density_rejects_bad_input():
    """Density invariants are enforced on construction."""
    with pytest.raises(NotHermitianError):
        ReducedDensity(np.array([[0.5, 1.0], [0.0, 0.5]]))
    with pytest.raises(DensityMatrixError):
        ReducedDensity(np.eye(4))
    with pytest.raises(DensityMatrixError):
        ReducedDensity(np.diag([0.7, 0.5, 0.0, -0.2]))


def test_uniform_of_identity_coin_projects_on_shift_basis():
    """With the identity coin the uniform limit dephases in the coin basis."""
    chi = bell_psi_plus()
    density = uniform_limit_reduced_density(identity(4), chi)
    np.testing.assert_allclose(density.matrix, np.diag([0.0, 0.5, 0.5, 0.0]), atol=1e-12)
