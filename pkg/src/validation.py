# SPDX-FileCopyrightText: 2025 Yannick Kees
# SPDX-FileCopyrightText: 2026 Yannick Kees
#
# SPDX-License-Identifier: MIT
"""
Acceptance checks run by the `validate` command.

Every reference number used by a check is read from REFERENCE_VALUES at call
time so a harness can perturb one and watch the matching check fail.
"""

import math
import time
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .asymptotics.closed_forms import uniform_family_II_density
from .asymptotics.engine import AsymptoticEngine, ReducedDensity, uniform_limit_reduced_density
from .asymptotics.oned import additivity_check, oned_closed_form_cpe
from .models.schemas import (
    GaussianIsotropic,
    PointMass,
    QuadratureSpec,
    TwoSiteEntangled,
    TwoSiteSeparable,
    WaveVector,
)
from .numerics.linalg import is_hermitian, unitary_eigen, von_neumann_entropy
from .simulator.lattice import (
    entanglement_trajectory,
    evolve,
    initialize,
    reduced_density_matrix,
    step,
    window_mean,
)
from .utils.config import config
from .utils.logger import setup_logger
from .walk.coin import hadamard2, random_unitary, tensor
from .walk.kspace import build_uk, kgrid
from .walk.states import (
    basis_state,
    bell_psi_minus,
    bell_psi_plus,
    coin_family_II,
    coin_family_III,
    custom_state,
    fourier_weight_grid,
)

logger = setup_logger(__name__)

SEED = 20260
# Fine enough to resolve the narrowest Gaussian weight used below.
WEIGHT_GRID = 256

REFERENCE_VALUES: dict[str, float] = {
    "C1": (9.0 - 4.0 * math.sqrt(2.0)) / 8.0,
    "C2": (5.0 - 3.0 * math.sqrt(2.0)) / 8.0,
    "C3": (3.0 - 2.0 * math.sqrt(2.0)) / 8.0,
    "C4": (2.0 * math.sqrt(2.0) - 1.0) / 8.0,
    "C5": (math.sqrt(2.0) - 1.0) / 8.0,
    "rho44": 0.125,
    "E_LL": 1.744,
    "E0": 0.872,
    "E_psi_plus": 1.978,
    "E_psi_minus": 1.888,
    "E_uniform_max": 2.0,
    "E_uniform_min": 1.0,
    "E_uniform_LR": 1.20,
}

TOLERANCES: dict[str, float] = {
    "density": 1e-6,
    "entropy_ll": 1e-3,
    "oned": 1e-3,
    "additivity": 1e-4,
    "extremes": 2e-3,
    "mirror": 1e-8,
    "uniform_entropy": 1e-9,
    "uniform_density": 1e-12,
    "uniform_lr": 0.01,
    "simulator_entropy": 0.01,
    "simulator_density": 5e-3,
    "translation": 1e-12,
    "local_reduction": 1e-10,
    "weight_symmetry": 1e-8,
    "reconstruction": 1e-12,
    "unitary_invariance": 1e-10,
    "weight_mean": 1e-10,
    "norm": 1e-10,
}


@dataclass
class CheckResult:
    """Outcome of one acceptance check."""

    name: str
    passed: bool
    detail: str


def _hh():
    return tensor(hadamard2(), hadamard2())


def _reference_ll_density() -> np.ndarray:
    r = REFERENCE_VALUES
    return np.array(
        [
            [r["C1"], r["C2"], r["C2"], r["C3"]],
            [r["C2"], r["C4"], r["C3"], r["C5"]],
            [r["C2"], r["C3"], r["C4"], r["C5"]],
            [r["C3"], r["C5"], r["C5"], r["rho44"]],
        ],
        dtype=np.complex128,
    )


def _quadrature(grid: int) -> QuadratureSpec:
    return QuadratureSpec(grid_points_per_axis=grid, max_refinements=1)


def check_closed_form_constants(grid: int, workers: int) -> CheckResult:
    """Localized |LL⟩ density, spectrum and entropy against the closed-form constants."""
    engine = AsymptoticEngine(_hh(), PointMass(), _quadrature(grid), workers=workers)
    report = engine.evaluate(basis_state("LL"))
    expected = _reference_ll_density()
    density_error = float(np.max(np.abs(report.density.matrix - expected)))
    r = REFERENCE_VALUES
    expected_eigs = np.sort([0.5, 4 * r["C3"], 4 * r["C5"], 4 * r["C5"]])
    eig_error = float(np.max(np.abs(np.sort(report.eigenvalues) - expected_eigs)))
    entropy_error = abs(report.entropy - REFERENCE_VALUES["E_LL"])
    passed = (
        density_error < TOLERANCES["density"]
        and eig_error < TOLERANCES["density"]
        and entropy_error < TOLERANCES["entropy_ll"]
    )
    return CheckResult(
        "closed-form-constants",
        passed,
        f"max|Δρ|={density_error:.2e} max|Δλ|={eig_error:.2e} E={report.entropy:.6f}",
    )


def check_oned_additivity(grid: int, workers: int) -> CheckResult:
    """1D anchor value and additivity on a 5×5 grid plus random tuples."""
    quad = _quadrature(grid)
    e0_error = abs(oned_closed_form_cpe(0.0, 0.0) - REFERENCE_VALUES["E0"])

    tuples = [
        (0.0, 0.0, theta, phi)
        for theta in np.linspace(-math.pi / 2, math.pi / 2, 5)
        for phi in np.linspace(-math.pi, math.pi, 5)
    ]
    rng = np.random.default_rng(SEED)
    for _ in range(20):
        t1, t2 = rng.uniform(-math.pi / 2, math.pi / 2, 2)
        p1, p2 = rng.uniform(-math.pi, math.pi, 2)
        tuples.append((t1, p1, t2, p2))

    worst = max(additivity_check(*t, quad).gap for t in tuples)
    passed = e0_error < TOLERANCES["oned"] and worst < TOLERANCES["additivity"]
    return CheckResult(
        "oned-additivity",
        passed,
        f"E0={oned_closed_form_cpe(0.0, 0.0):.6f} max gap={worst:.2e} over {len(tuples)} points",
    )


def check_entangled_extremes(grid: int, workers: int) -> CheckResult:
    """Family-II surface extremes, the Ψ⁻ value and the family-III mirror symmetry."""
    engine = AsymptoticEngine(_hh(), PointMass(), _quadrature(grid), workers=workers)
    thetas = np.linspace(-math.pi / 2, math.pi / 2, 41)
    phis = np.linspace(-math.pi, math.pi, 41)

    surface = np.array(
        [[engine.evaluate(coin_family_II(t, p)).entropy for p in phis] for t in thetas],
    )
    i_max, j_max = np.unravel_index(np.argmax(surface), surface.shape)
    e_max = float(surface[i_max, j_max])
    e_min = float(surface.min())
    e_minus = engine.evaluate(bell_psi_minus()).entropy
    best = coin_family_II(thetas[i_max], phis[j_max])
    overlap = abs(np.vdot(bell_psi_plus().amplitudes, best.amplitudes))
    at_psi_plus = overlap**2 > 1.0 - 1e-12

    mirror = 0.0
    for t in thetas[::5]:
        for p in phis[::5]:
            e3 = engine.evaluate(coin_family_III(t, p)).entropy
            e2 = engine.evaluate(coin_family_II(-t, p)).entropy
            mirror = max(mirror, abs(e3 - e2))

    tol = TOLERANCES["extremes"]
    passed = (
        abs(e_max - REFERENCE_VALUES["E_psi_plus"]) < tol
        and at_psi_plus
        and abs(e_min - REFERENCE_VALUES["E_LL"]) < tol
        and abs(e_minus - REFERENCE_VALUES["E_psi_minus"]) < tol
        and mirror < TOLERANCES["mirror"]
    )
    return CheckResult(
        "entangled-extremes",
        passed,
        f"max={e_max:.6f} min={e_min:.6f} E(Ψ⁻)={e_minus:.6f} mirror={mirror:.1e}",
    )


def check_uniform_limit(grid: int, workers: int) -> CheckResult:
    """Uniform-limit Bell and |LR⟩ values and the family-II closed-form table."""
    coin = _hh()
    plus = uniform_limit_reduced_density(coin, bell_psi_plus())
    minus = uniform_limit_reduced_density(coin, bell_psi_minus())
    lr = uniform_limit_reduced_density(coin, basis_state("LR"))

    plus_error = float(np.max(np.abs(plus.matrix - np.eye(4) / 4)))
    e_plus, e_minus, e_lr = plus.entropy(), minus.entropy(), lr.entropy()

    table_error = 0.0
    for t in np.linspace(-math.pi / 2, math.pi / 2, 9):
        for p in np.linspace(-math.pi, math.pi, 9):
            rho = uniform_limit_reduced_density(coin, coin_family_II(t, p)).matrix
            error = float(np.max(np.abs(rho - uniform_family_II_density(t, p))))
            table_error = max(table_error, error)

    passed = (
        plus_error < TOLERANCES["uniform_density"]
        and abs(e_plus - REFERENCE_VALUES["E_uniform_max"]) < TOLERANCES["uniform_entropy"]
        and abs(e_minus - REFERENCE_VALUES["E_uniform_min"]) < TOLERANCES["uniform_entropy"]
        and abs(e_lr - REFERENCE_VALUES["E_uniform_LR"]) < TOLERANCES["uniform_lr"]
        and table_error < TOLERANCES["uniform_density"]
    )
    return CheckResult(
        "uniform-limit",
        passed,
        f"E(Ψ⁺)={e_plus:.9f} E(Ψ⁻)={e_minus:.9f} E(LR)={e_lr:.4f} table={table_error:.1e}",
    )


def check_simulator_cross(grid: int, workers: int) -> CheckResult:
    """Lattice window means and n=200 densities against the quadrature."""
    coin = _hh()
    engine = AsymptoticEngine(coin, PointMass(), _quadrature(grid), workers=workers)
    worst_entropy = 0.0
    worst_density = 0.0
    for chi in (basis_state("LL"), bell_psi_plus(), bell_psi_minus()):
        report = engine.evaluate(chi)
        trajectory = entanglement_trajectory(chi, PointMass(), coin, 160)
        worst_entropy = max(worst_entropy, abs(window_mean(trajectory, 150, 160) - report.entropy))
        rho = reduced_density_matrix(evolve(chi, PointMass(), coin, 200))
        worst_density = max(worst_density, float(np.max(np.abs(rho - report.density.matrix))))
    passed = (
        worst_entropy < TOLERANCES["simulator_entropy"]
        and worst_density < TOLERANCES["simulator_density"]
    )
    return CheckResult(
        "simulator-cross-check",
        passed,
        f"max|ΔE|={worst_entropy:.2e} max|Δρ(200)|={worst_density:.2e}",
    )


def check_nonlocal_invariances(grid: int, workers: int) -> CheckResult:
    """Translation invariance, α=0 reduction, the β+π symmetry and the [1, 2] range."""
    coin = _hh()
    quad = _quadrature(grid)

    def report(chi, pos):
        return AsymptoticEngine(coin, pos, quad, workers=workers).evaluate(chi)

    local = {name: report(chi, PointMass()) for name, chi in _nonlocal_states().items()}

    chi = bell_psi_plus()
    shifted = report(chi, PointMass(x0=3, y0=-2))
    translation = float(np.max(np.abs(shifted.density.matrix - local["psi+"].density.matrix)))

    reduction = 0.0
    symmetry = 0.0
    entropies = []
    for name, chi in _nonlocal_states().items():
        for kind in (TwoSiteSeparable, TwoSiteEntangled):
            at_zero = report(chi, kind(alpha=0.0, beta=0.3))
            reduction = max(
                reduction,
                float(np.max(np.abs(at_zero.density.matrix - local[name].density.matrix))),
            )
            for alpha, beta in ((math.pi / 8, -3 * math.pi / 4), (math.pi / 5, -math.pi / 3)):
                shifted_phase = report(chi, kind(alpha=alpha, beta=beta + math.pi))
                flipped = report(chi, kind(alpha=-alpha, beta=beta))
                symmetry = max(symmetry, abs(shifted_phase.entropy - flipped.entropy))
                entropies.extend([shifted_phase.entropy, flipped.entropy])

    in_range = all(1.0 - 1e-9 <= e <= 2.0 + 1e-9 for e in entropies)
    passed = (
        translation < TOLERANCES["translation"]
        and reduction < TOLERANCES["local_reduction"]
        and symmetry < TOLERANCES["weight_symmetry"]
        and in_range
    )
    return CheckResult(
        "nonlocal-invariances",
        passed,
        f"translation={translation:.1e} α=0={reduction:.1e} β+π={symmetry:.1e} "
        f"E∈[{min(entropies):.4f}, {max(entropies):.4f}]",
    )


def _nonlocal_states() -> dict:
    return {"LL": basis_state("LL"), "psi+": bell_psi_plus(), "psi-": bell_psi_minus()}


def _random_state(rng: np.random.Generator):
    z = rng.normal(size=4) + 1j * rng.normal(size=4)
    return custom_state(z, "random")


def check_property_suites(grid: int, workers: int) -> CheckResult:
    """Randomized invariants over 100 inputs each."""
    rng = np.random.default_rng(SEED)
    n = 100
    failures: list[str] = []

    reconstruction = 0.0
    for _ in range(n):
        coin = random_unitary(4, rng)
        k = WaveVector(kx=rng.uniform(-math.pi, math.pi), ky=rng.uniform(-math.pi, math.pi))
        u = build_uk(coin, k)
        error = float(np.max(np.abs(unitary_eigen(u).reconstruct() - u)))
        reconstruction = max(reconstruction, error)
    if reconstruction >= TOLERANCES["reconstruction"]:
        failures.append(f"reconstruction {reconstruction:.1e}")

    engine = AsymptoticEngine(_hh(), PointMass(), QuadratureSpec(grid_points_per_axis=64))
    channel = engine.channel(64)
    density_ok = True
    invariance = 0.0
    for _ in range(n):
        rho = channel.apply(_random_state(rng))
        try:
            density = ReducedDensity(rho)
        except Exception:
            density_ok = False
            continue
        density_ok &= is_hermitian(density.matrix)
        v = random_unitary(4, rng).matrix
        rotated = v @ density.matrix @ v.conj().T
        invariance = max(invariance, abs(von_neumann_entropy(rotated) - density.entropy()))
    if not density_ok:
        failures.append("density invariants")
    if invariance >= TOLERANCES["unitary_invariance"]:
        failures.append(f"unitary invariance {invariance:.1e}")

    axis = kgrid(WEIGHT_GRID, config.DEFAULT_OFFSET)
    kx, ky = np.meshgrid(axis, axis, indexing="ij")
    weight_error = 0.0
    for _ in range(n):
        choice = rng.integers(3)
        alpha = rng.uniform(-math.pi / 2, math.pi / 2)
        beta = rng.uniform(-math.pi, math.pi)
        if choice == 0:
            pos = TwoSiteSeparable(alpha=alpha, beta=beta)
        elif choice == 1:
            pos = TwoSiteEntangled(alpha=alpha, beta=beta)
        else:
            pos = GaussianIsotropic(sigma=rng.uniform(2.0, 6.0))
        weight_error = max(weight_error, abs(float(fourier_weight_grid(pos, kx, ky).mean()) - 1.0))
    if weight_error >= TOLERANCES["weight_mean"]:
        failures.append(f"weight mean {weight_error:.1e}")

    norm_error = 0.0
    cone_ok = True
    for _ in range(n):
        coin = random_unitary(4, rng)
        pos = TwoSiteEntangled(alpha=rng.uniform(-1.5, 1.5), beta=rng.uniform(-3.0, 3.0))
        state = initialize(_random_state(rng), pos, 20)
        for _ in range(20):
            state = step(state, coin)
            norm_error = max(norm_error, abs(state.norm - 1.0))
            cone = state.light_cone
            lo, hi = state.radius - cone, state.radius + cone + 1
            outside = state.amplitudes.copy()
            outside[:, lo:hi, lo:hi] = 0.0
            cone_ok &= not np.any(outside)
    if norm_error >= TOLERANCES["norm"]:
        failures.append(f"norm {norm_error:.1e}")
    if not cone_ok:
        failures.append("light cone")

    detail = "; ".join(failures) if failures else f"{n} inputs per property"
    return CheckResult("property-suites", not failures, detail)


CHECKS: dict[str, Callable[[int, int], CheckResult]] = {
    "closed-form-constants": check_closed_form_constants,
    "oned-additivity": check_oned_additivity,
    "entangled-extremes": check_entangled_extremes,
    "uniform-limit": check_uniform_limit,
    "simulator-cross-check": check_simulator_cross,
    "nonlocal-invariances": check_nonlocal_invariances,
    "property-suites": check_property_suites,
}


def run_validation(
    only: list[str] | None = None,
    grid: int | None = None,
    workers: int = 1,
) -> list[CheckResult]:
    """
    Run acceptance checks in registry order.

    Args:
        only: Check names to run (None = all)
        grid: Quadrature grid points per axis
        workers: Threads for quadrature chunks

    Returns:
        List of CheckResult
    """
    names = [name for name in CHECKS if not only or name in only]
    m = grid or config.VALIDATION_GRID
    results = []

    logger.info("=" * 80)
    logger.info(f"Running {len(names)} validation checks at M={m}")
    logger.info("=" * 80)
    for i, name in enumerate(names, 1):
        logger.info(f"\n[Step {i}/{len(names)}] {name}...")
        start = time.perf_counter()
        try:
            result = CHECKS[name](m, workers)
        except Exception as e:
            logger.error(f"Check {name} raised: {e}")
            result = CheckResult(name, False, f"error: {e}")
        elapsed = time.perf_counter() - start
        logger.info(f"  {'PASS' if result.passed else 'FAIL'} in {elapsed:.1f}s")
        results.append(result)
    return results


def render_table(results: list[CheckResult]) -> str:
    """Fixed-width PASS/FAIL table, one row per check."""
    width = max(len(r.name) for r in results) if results else 10
    lines = ["=" * 80, "VALIDATION", "=" * 80]
    for r in results:
        lines.append(f"  {r.name:<{width}}  {'PASS' if r.passed else 'FAIL'}  {r.detail}")
    passed = sum(r.passed for r in results)
    lines.append("=" * 80)
    lines.append(f"{passed}/{len(results)} checks passed")
    return "\n".join(lines)
